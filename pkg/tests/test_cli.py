"""Command line behavior: artifact round trips, query formatting, exit
codes, and the built-in check suites."""

import json
import shutil
import subprocess

import numpy as np
import pytest

from beliefpool import (
    BayesNet,
    Cpt,
    MarkovNet,
    bn_to_joint,
    linop,
    logop,
    network_from_dict,
    save_network,
)
from beliefpool.cli import (
    EXIT_DEGENERATE,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_ZERO_EVIDENCE,
    main,
)

AGENT_A = BayesNet(
    (Cpt(0, (), (0.5,)), Cpt(1, (), (0.5,))), labels=("A1", "A2")
)
AGENT_B = BayesNet(
    (Cpt(0, (), (0.8,)), Cpt(1, (), (0.6,))), labels=("A1", "A2")
)
CHAIN_A = BayesNet(
    (Cpt(0, (), (0.2,)), Cpt(1, (0,), (0.6, 0.4))), labels=("A1", "A2")
)
CHAIN_B = BayesNet(
    (Cpt(0, (), (0.8,)), Cpt(1, (0,), (0.3, 0.8))), labels=("A1", "A2")
)


@pytest.fixture
def agent_files(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    save_network(AGENT_A, a)
    save_network(AGENT_B, b)
    return str(a), str(b)


@pytest.fixture
def chain_files(tmp_path):
    a = tmp_path / "chain_a.json"
    b = tmp_path / "chain_b.json"
    save_network(CHAIN_A, a)
    save_network(CHAIN_B, b)
    return str(a), str(b)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAggregate:
    def test_linop_manifest_to_stdout(self, capsys, agent_files):
        code, out, _ = run(capsys, "aggregate", *agent_files, "--pool", "linop")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["kind"] == "linop-manifest"
        assert data["inputs"] == list(agent_files)
        np.testing.assert_allclose(data["weights"], [0.5, 0.5])

    def test_linop_weights_normalized(self, capsys, agent_files):
        code, out, _ = run(
            capsys, "aggregate", *agent_files, "--pool", "linop",
            "--weights", "1,3",
        )
        assert code == EXIT_OK
        np.testing.assert_allclose(json.loads(out)["weights"], [0.25, 0.75])

    def test_logop_consensus_file(self, capsys, chain_files, tmp_path):
        out_path = tmp_path / "consensus.json"
        code, out, _ = run(
            capsys, "aggregate", *chain_files, "--pool", "logop",
            "--out", str(out_path),
        )
        assert code == EXIT_OK
        assert out == ""
        data = json.loads(out_path.read_text())
        assert data["kind"] == "bayes"
        assert data["provenance"]["pool"] == "logop"
        assert data["provenance"]["agent_queries"] == 6
        assert data["provenance"]["elimination_order"] == ["A1", "A2"]
        consensus = network_from_dict(data)
        dense = logop([bn_to_joint(CHAIN_A), bn_to_joint(CHAIN_B)])
        np.testing.assert_allclose(
            bn_to_joint(consensus).probs, dense.probs, atol=1e-12
        )

    def test_markov_input_rejected(self, capsys, tmp_path):
        path = tmp_path / "mn.json"
        save_network(MarkovNet(2, frozenset({(0, 1)}), labels=("A1", "A2")), path)
        code, _, err = run(capsys, "aggregate", str(path), "--pool", "logop")
        assert code == EXIT_PARSE
        assert "markov" in err

    def test_mismatched_variables(self, capsys, tmp_path, agent_files):
        other = tmp_path / "other.json"
        save_network(
            BayesNet((Cpt(0, (), (0.5,)),), labels=("B1",)), other
        )
        code, _, err = run(
            capsys, "aggregate", agent_files[0], str(other), "--pool", "logop"
        )
        assert code == EXIT_MISMATCH
        assert "error" in err

    def test_degenerate_cpt_hints_dense_oracle(self, capsys, tmp_path, chain_files):
        certain = tmp_path / "certain.json"
        save_network(
            BayesNet(
                (Cpt(0, (), (0.2,)), Cpt(1, (0,), (0.6, 1.0))),
                labels=("A1", "A2"),
            ),
            certain,
        )
        code, _, err = run(
            capsys, "aggregate", str(certain), chain_files[1], "--pool", "logop"
        )
        assert code == EXIT_DEGENERATE
        assert "--dense-oracle" in err

        code, out, _ = run(
            capsys, "aggregate", str(certain), chain_files[1], "--pool", "logop",
            "--dense-oracle",
        )
        assert code == EXIT_OK
        assert json.loads(out)["provenance"]["agent_queries"] == 0

    def test_label_order_differences_are_aligned(self, capsys, tmp_path):
        flipped = BayesNet(
            (Cpt(0, (1,), (0.6, 0.4)), Cpt(1, (), (0.2,))), labels=("A2", "A1")
        )
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        save_network(CHAIN_A, a)
        save_network(flipped, b)
        code, out, _ = run(capsys, "aggregate", str(a), str(b), "--pool", "logop")
        assert code == EXIT_OK
        consensus = network_from_dict(json.loads(out))
        np.testing.assert_allclose(
            bn_to_joint(consensus).probs, bn_to_joint(CHAIN_A).probs, atol=1e-12
        )


class TestQuery:
    def test_linop_single_event(self, capsys, agent_files):
        code, out, _ = run(
            capsys, "query", *agent_files, "--pool", "linop", "--event", "A1=1"
        )
        assert code == EXIT_OK
        assert out.strip() == "0.650000"

    def test_linop_joint_event(self, capsys, agent_files):
        code, out, _ = run(
            capsys, "query", *agent_files, "--pool", "linop",
            "--event", "A1=1,A2=1",
        )
        assert code == EXIT_OK
        assert out.strip() == "0.365000"

    def test_linop_conditional(self, capsys, agent_files):
        code, out, _ = run(
            capsys, "query", *agent_files, "--pool", "linop",
            "--event", "A1=1", "--given", "A2=1",
        )
        assert code == EXIT_OK
        assert out.strip() == f"{0.365 / 0.55:.6f}"

    def test_logop_event(self, capsys, chain_files):
        code, out, _ = run(
            capsys, "query", *chain_files, "--pool", "logop", "--event", "A1=1"
        )
        assert code == EXIT_OK
        assert out.strip() == "0.488926"

    def test_contradictory_event_prints_zero(self, capsys, agent_files):
        code, out, _ = run(
            capsys, "query", *agent_files, "--pool", "linop",
            "--event", "A1=1", "--given", "A1=0",
        )
        assert code == EXIT_OK
        assert out.strip() == "0.000000"

    def test_event_implied_by_evidence(self, capsys, agent_files):
        code, out, _ = run(
            capsys, "query", *agent_files, "--pool", "linop",
            "--event", "A1=1", "--given", "A1=1,A2=0",
        )
        assert code == EXIT_OK
        assert out.strip() == "1.000000"

    def test_unknown_variable(self, capsys, agent_files):
        code, _, err = run(
            capsys, "query", *agent_files, "--pool", "linop", "--event", "A9=1"
        )
        assert code == EXIT_PARSE
        assert "A9" in err

    def test_bad_literal_syntax(self, capsys, agent_files):
        code, _, err = run(
            capsys, "query", *agent_files, "--pool", "linop", "--event", "A1=maybe"
        )
        assert code == EXIT_PARSE

    def test_duplicate_assignment(self, capsys, agent_files):
        code, _, _ = run(
            capsys, "query", *agent_files, "--pool", "linop",
            "--event", "A1=1,A1=1",
        )
        assert code == EXIT_PARSE

    def test_zero_evidence_exit_code(self, capsys, tmp_path):
        certain = tmp_path / "certain.json"
        save_network(
            BayesNet(
                (Cpt(0, (), (1.0,)), Cpt(1, (), (0.5,))), labels=("A1", "A2")
            ),
            certain,
        )
        code, _, err = run(
            capsys, "query", str(certain), "--pool", "linop",
            "--event", "A2=1", "--given", "A1=0",
        )
        assert code == EXIT_ZERO_EVIDENCE

    def test_manifest_round_trip(self, capsys, tmp_path, monkeypatch, agent_files):
        monkeypatch.chdir(tmp_path)
        code, _, _ = run(
            capsys, "aggregate", "a.json", "b.json", "--pool", "linop",
            "--weights", "1,1", "--out", "pool.json",
        )
        assert code == EXIT_OK
        # Manifest inputs resolve relative to the manifest's directory.
        monkeypatch.chdir(tmp_path.parent)
        code, out, _ = run(
            capsys, "query", str(tmp_path / "pool.json"), "--pool", "linop",
            "--event", "A1=1,A2=1",
        )
        assert code == EXIT_OK
        assert out.strip() == "0.365000"

    def test_manifest_needs_linop(self, capsys, tmp_path, monkeypatch, agent_files):
        monkeypatch.chdir(tmp_path)
        run(capsys, "aggregate", "a.json", "b.json", "--pool", "linop",
            "--out", "pool.json")
        code, _, err = run(
            capsys, "query", "pool.json", "--pool", "logop", "--event", "A1=1"
        )
        assert code == EXIT_PARSE
        assert "linop" in err

    def test_cli_weights_override_manifest(self, capsys, tmp_path, monkeypatch, agent_files):
        monkeypatch.chdir(tmp_path)
        run(capsys, "aggregate", "a.json", "b.json", "--pool", "linop",
            "--weights", "1,0", "--out", "pool.json")
        code, out, _ = run(
            capsys, "query", "pool.json", "--pool", "linop",
            "--event", "A1=1", "--weights", "0,1",
        )
        assert code == EXIT_OK
        assert out.strip() == "0.800000"

    def test_saved_consensus_is_queryable(self, capsys, tmp_path, chain_files):
        out_path = tmp_path / "consensus.json"
        run(capsys, "aggregate", *chain_files, "--pool", "logop",
            "--out", str(out_path))
        code, out, _ = run(
            capsys, "query", str(out_path), "--pool", "logop",
            "--event", "A2=1", "--given", "A1=1",
        )
        assert code == EXIT_OK
        assert out.strip() == "0.620204"


class TestCheck:
    def test_examples_suite(self, capsys):
        code, out, _ = run(capsys, "check", "--suite", "examples")
        assert code == EXIT_OK
        for token in ("ex1-linop", "ex2-logop", "ex3-fa", "fig1d-logop"):
            assert token in out

    def test_axioms_suite(self, capsys):
        code, out, _ = run(
            capsys, "check", "--suite", "axioms", "--seed", "0", "--trials", "5"
        )
        assert code == EXIT_OK
        assert "property=unam pool=linop" in out
        assert "negative-control" in out

    def test_oracle_suite(self, capsys):
        code, out, _ = run(
            capsys, "check", "--suite", "oracle", "--trials", "5"
        )
        assert code == EXIT_OK
        assert "max_state_error" in out


class TestParsing:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_PARSE

    def test_missing_pool_flag(self, capsys, agent_files):
        with pytest.raises(SystemExit) as exc:
            main(["aggregate", agent_files[0]])
        assert exc.value.code == EXIT_PARSE

    def test_bad_weights_string(self, capsys, agent_files):
        code, _, err = run(
            capsys, "aggregate", *agent_files, "--pool", "linop",
            "--weights", "a,b",
        )
        assert code == EXIT_PARSE

    def test_malformed_network_file(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"kind\": \"bayes\"}")
        code, _, err = run(capsys, "aggregate", str(path), "--pool", "linop")
        assert code == EXIT_PARSE


@pytest.mark.skipif(
    shutil.which("beliefpool") is None,
    reason="console script not on PATH",
)
def test_console_script_smoke(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    save_network(AGENT_A, a)
    save_network(AGENT_B, b)
    proc = subprocess.run(
        ["beliefpool", "query", str(a), str(b), "--pool", "linop",
         "--event", "A1=1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.650000"
