"""JSON files for networks and pooling manifests.

A network file holds "kind" ("bayes" or "markov"), an ordered
"variables" label list, "edges" as label pairs, and for bayes kind a
"cpts" map. CPT rows are keyed by parent outcome strings: with parents
listed as (p_0, ..., p_{k-1}), character i of the key is "1" exactly
when p_i is true, and a parentless node uses the single key "".
Probabilities round-trip bit-exactly since values are written with
Python's shortest-repr float serialization.

A manifest file ("kind": "linop-manifest") names input network files
plus weights instead of storing a pooled model, because an arithmetic
pool of networks generally has no compact network form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import MismatchedVariables, ModelFormatError
from .networks import BayesNet, Cpt, MarkovNet

NETWORK_KINDS = ("bayes", "markov")
MANIFEST_KIND = "linop-manifest"


@dataclass(frozen=True)
class LinopManifest:
    """Pointer to input networks pooled arithmetically with weights."""

    inputs: tuple[str, ...]
    weights: tuple[float, ...] | None = None


def _require_labels(model: BayesNet | MarkovNet) -> tuple[str, ...]:
    if model.labels is None:
        raise ValueError("serializing a network requires variable labels")
    return model.labels


def _row_key(row_index: int, n_parents: int) -> str:
    return "".join(
        "1" if (row_index >> i) & 1 else "0" for i in range(n_parents)
    )


def _row_index(key: str, n_parents: int) -> int:
    if len(key) != n_parents or any(c not in "01" for c in key):
        raise ModelFormatError(
            f"row key {key!r} is not a {n_parents}-character outcome string"
        )
    return sum(1 << i for i, c in enumerate(key) if c == "1")


def network_to_dict(
    model: BayesNet | MarkovNet, provenance: dict | None = None
) -> dict:
    """JSON-ready representation of a network."""
    labels = _require_labels(model)
    if isinstance(model, BayesNet):
        edges = sorted(
            (labels[p], labels[c.owner]) for c in model.cpts for p in c.parents
        )
        cpts = {}
        for cpt in model.cpts:
            rows = {
                _row_key(r, len(cpt.parents)): cpt.rows[r]
                for r in range(len(cpt.rows))
            }
            cpts[labels[cpt.owner]] = {
                "parents": [labels[p] for p in cpt.parents],
                "rows": dict(sorted(rows.items())),
            }
        data = {
            "kind": "bayes",
            "variables": list(labels),
            "edges": [list(e) for e in edges],
            "cpts": cpts,
        }
    else:
        edges = sorted(
            tuple(sorted((labels[u], labels[v]))) for u, v in model.edges
        )
        data = {
            "kind": "markov",
            "variables": list(labels),
            "edges": [list(e) for e in edges],
        }
    if provenance is not None:
        data["provenance"] = provenance
    return data


def _parse_variables(data: dict) -> tuple[str, ...]:
    variables = data.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) and v for v in variables)
    ):
        raise ModelFormatError(
            "'variables' must be a nonempty list of nonempty strings"
        )
    if len(set(variables)) != len(variables):
        raise ModelFormatError("variable labels must be distinct")
    return tuple(variables)


def _parse_edges(
    data: dict, index: dict[str, int]
) -> list[tuple[int, int]]:
    edges = data.get("edges")
    if not isinstance(edges, list):
        raise ModelFormatError("'edges' must be a list of label pairs")
    parsed = []
    for e in edges:
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, str) for x in e)
        ):
            raise ModelFormatError(f"edge {e!r} is not a pair of labels")
        for x in e:
            if x not in index:
                raise ModelFormatError(f"edge references unknown variable {x!r}")
        parsed.append((index[e[0]], index[e[1]]))
    return parsed


def _parse_probability(value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelFormatError(f"probability {value!r} is not a number")
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ModelFormatError(f"probability {value} outside [0, 1]")
    return value


def network_from_dict(data) -> BayesNet | MarkovNet:
    """Reconstruct a network from its JSON representation."""
    if not isinstance(data, dict):
        raise ModelFormatError("top level must be a JSON object")
    kind = data.get("kind")
    if kind not in NETWORK_KINDS:
        raise ModelFormatError(
            f"'kind' must be one of {NETWORK_KINDS}, got {kind!r}"
        )
    labels = _parse_variables(data)
    index = {label: i for i, label in enumerate(labels)}
    edges = _parse_edges(data, index)

    if kind == "markov":
        if "cpts" in data:
            raise ModelFormatError("markov networks do not carry 'cpts'")
        try:
            return MarkovNet(len(labels), frozenset(edges), labels)
        except Exception as err:
            raise ModelFormatError(str(err)) from err

    cpts_data = data.get("cpts")
    if not isinstance(cpts_data, dict):
        raise ModelFormatError("'cpts' must map each variable to its table")
    if set(cpts_data) != set(labels):
        raise ModelFormatError(
            "'cpts' must have exactly one entry per variable"
        )
    cpts = []
    for label in labels:
        entry = cpts_data[label]
        if not isinstance(entry, dict):
            raise ModelFormatError(f"cpt for {label!r} must be an object")
        parents_raw = entry.get("parents")
        if not isinstance(parents_raw, list) or not all(
            isinstance(p, str) for p in parents_raw
        ):
            raise ModelFormatError(f"cpt for {label!r} needs a parent label list")
        for p in parents_raw:
            if p not in index:
                raise ModelFormatError(
                    f"cpt for {label!r} references unknown parent {p!r}"
                )
        parents = tuple(index[p] for p in parents_raw)
        rows_raw = entry.get("rows")
        k = len(parents)
        if not isinstance(rows_raw, dict) or len(rows_raw) != (1 << k):
            raise ModelFormatError(
                f"cpt for {label!r} needs exactly {1 << k} rows"
            )
        rows = [0.0] * (1 << k)
        seen = set()
        for key, value in rows_raw.items():
            if not isinstance(key, str):
                raise ModelFormatError(f"row key {key!r} must be a string")
            r = _row_index(key, k)
            if r in seen:
                raise ModelFormatError(f"duplicate row key {key!r}")
            seen.add(r)
            rows[r] = _parse_probability(value)
        try:
            cpts.append(Cpt(index[label], parents, tuple(rows)))
        except Exception as err:
            raise ModelFormatError(str(err)) from err

    try:
        bn = BayesNet(tuple(cpts), labels)
    except Exception as err:
        raise ModelFormatError(str(err)) from err
    declared = {(p, c) for p, c in edges}
    derived = {(p, c.owner) for c in bn.cpts for p in c.parents}
    if declared != derived:
        raise ModelFormatError(
            "'edges' disagree with the parent lists in 'cpts'"
        )
    return bn


def manifest_to_dict(manifest: LinopManifest) -> dict:
    data: dict = {"kind": MANIFEST_KIND, "inputs": list(manifest.inputs)}
    if manifest.weights is not None:
        data["weights"] = list(manifest.weights)
    return data


def manifest_from_dict(data) -> LinopManifest:
    if not isinstance(data, dict) or data.get("kind") != MANIFEST_KIND:
        raise ModelFormatError(f"manifest must have kind {MANIFEST_KIND!r}")
    inputs = data.get("inputs")
    if (
        not isinstance(inputs, list)
        or not inputs
        or not all(isinstance(p, str) and p for p in inputs)
    ):
        raise ModelFormatError("'inputs' must be a nonempty list of paths")
    weights = data.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or not all(
            isinstance(w, (int, float)) and not isinstance(w, bool)
            for w in weights
        ):
            raise ModelFormatError("'weights' must be a list of numbers")
        weights = tuple(float(w) for w in weights)
    return LinopManifest(tuple(inputs), weights)


def _load_json(path: str | Path):
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ModelFormatError(f"cannot read {path}: {err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ModelFormatError(f"{path} is not valid JSON: {err}") from err


def load_network(path: str | Path) -> BayesNet | MarkovNet:
    return network_from_dict(_load_json(path))


def load_model_file(
    path: str | Path,
) -> BayesNet | MarkovNet | LinopManifest:
    """Load a network or manifest, dispatching on the file's kind."""
    data = _load_json(path)
    if isinstance(data, dict) and data.get("kind") == MANIFEST_KIND:
        return manifest_from_dict(data)
    return network_from_dict(data)


def _dump(data: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def save_network(
    model: BayesNet | MarkovNet,
    path: str | Path,
    provenance: dict | None = None,
) -> None:
    _dump(network_to_dict(model, provenance), path)


def save_manifest(manifest: LinopManifest, path: str | Path) -> None:
    _dump(manifest_to_dict(manifest), path)


def align_variables(
    models: Sequence[BayesNet | MarkovNet],
) -> list[BayesNet | MarkovNet]:
    """Reindex all models to the first model's variable order.

    Models must carry labels and agree on the label set; structures and
    CPT rows are preserved under the renaming.
    """
    if not models:
        raise ValueError("need at least one model")
    reference = _require_labels(models[0])
    aligned: list[BayesNet | MarkovNet] = []
    target = {label: i for i, label in enumerate(reference)}
    for model in models:
        labels = _require_labels(model)
        if set(labels) != set(reference):
            raise MismatchedVariables(
                f"variable sets differ: {sorted(labels)} vs {sorted(reference)}"
            )
        perm = {i: target[label] for i, label in enumerate(labels)}
        if isinstance(model, BayesNet):
            cpts = tuple(
                Cpt(
                    perm[c.owner],
                    tuple(perm[p] for p in c.parents),
                    c.rows,
                )
                for c in model.cpts
            )
            aligned.append(BayesNet(cpts, reference))
        else:
            edges = frozenset((perm[u], perm[v]) for u, v in model.edges)
            aligned.append(MarkovNet(model.m, edges, reference))
    return aligned
