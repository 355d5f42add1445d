import json

import jsonschema
import pytest

from ksecretary.cli import main

PARAMS_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer"},
        "k": {"type": "integer"},
        "t": {"type": "integer"},
        "r": {"type": ["integer", "null"]},
    },
    "required": ["n", "k", "t", "r"],
}

EXACT_SCHEMA = {
    "type": "object",
    "properties": {
        "params": PARAMS_SCHEMA,
        "p_dom": {"type": "array", "items": {"type": "number"}},
        "p_item": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
        "ratio": {"type": "number"},
    },
    "required": ["params", "p_dom", "p_item", "ratio"],
    "additionalProperties": False,
}

SIMULATE_SCHEMA = {
    "type": "object",
    "properties": {
        "params": PARAMS_SCHEMA,
        "policy": {"enum": ["single-ref", "optimistic"]},
        "trials": {"type": "integer"},
        "seed": {"type": "integer"},
        "ratioEstimate": {"type": "number"},
        "stderr": {"type": "number"},
        "perSlot": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "item": {"type": "integer"},
                    "slot": {"type": "integer"},
                    "estimate": {"type": "number"},
                    "stderr": {"type": "number"},
                },
                "required": ["item", "slot", "estimate", "stderr"],
            },
        },
    },
    "required": ["params", "policy", "trials", "seed", "ratioEstimate", "stderr", "perSlot"],
    "additionalProperties": False,
}

TABLE_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "k": {"type": "integer"},
            "r": {"type": "integer"},
            "c": {"type": "number"},
            "cr": {"type": "number"},
            "kleinberg": {"type": ["number", "null"]},
        },
        "required": ["k", "r", "c", "cr", "kleinberg"],
    },
}

VERIFY_SCHEMA = {
    "type": "object",
    "properties": {
        "nMax": {"type": "integer"},
        "backend": {"type": "string"},
        "totalInstances": {"type": "integer"},
        "allPass": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "identity": {"type": "string"},
                    "config": {"type": "object"},
                    "instances": {"type": "integer"},
                    "failures": {"type": "array", "items": {"type": "string"}},
                },
                "required": ["identity", "config", "instances", "failures"],
            },
        },
    },
    "required": ["nMax", "backend", "totalInstances", "allPass", "checks"],
}


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExactCommand:
    def test_json_output_and_schema(self, capsys):
        code, out, _ = run_cli(capsys, "exact", "--n", "4", "--k", "1", "--t", "2", "--r", "1")
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, EXACT_SCHEMA)
        assert payload["ratio"] == pytest.approx(11 / 24, rel=1e-12)

    def test_large_n_tracks_asymptotic_target(self, capsys):
        code, out, _ = run_cli(capsys, "exact", "--n", "100", "--k", "2", "--t", "27", "--r", "1")
        assert code == 0
        ratio = json.loads(out)["ratio"]
        assert ratio == pytest.approx(0.4119, abs=5e-3)

    def test_invalid_t_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "exact", "--n", "10", "--k", "2", "--t", "1", "--r", "1")
        assert code == 2
        assert "t must exceed k" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "exact", "--n", "6", "--k", "2", "--t", "3", "--r", "1", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "record,item,slot,value"
        assert any(line.startswith("ratio,") for line in lines)


class TestTableCommand:
    def test_csv_shape_and_kleinberg_column(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--k-max", "3", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "k,r,c,cr,kleinberg"
        assert len(lines) == 4
        assert lines[1].endswith(",")  # k=1: vacuous benchmark -> empty cell

    def test_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--k-max", "2")
        assert code == 0
        jsonschema.validate(json.loads(out), TABLE_SCHEMA)

    def test_byte_stable(self, capsys):
        _, first, _ = run_cli(capsys, "table", "--k-max", "3", "--format", "csv")
        _, second, _ = run_cli(capsys, "table", "--k-max", "3", "--format", "csv")
        assert first == second

    def test_bad_k_max_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "table", "--k-max", "0")
        assert code == 2
        assert "k must be" in err


class TestSimulateCommand:
    ARGS = (
        "simulate", "--policy", "single-ref", "--n", "50", "--k", "2",
        "--t", "14", "--r", "1", "--trials", "4000", "--seed", "7",
    )

    def test_json_schema_and_determinism(self, capsys):
        code, out, _ = run_cli(capsys, *self.ARGS)
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, SIMULATE_SCHEMA)
        assert payload["seed"] == 7
        _, again, _ = run_cli(capsys, *self.ARGS)
        assert out == again

    def test_default_seed_is_zero_and_printed(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--policy", "optimistic", "--n", "30", "--k", "2",
            "--t", "9", "--trials", "100",
        )
        assert code == 0
        assert json.loads(out)["seed"] == 0

    def test_missing_r_for_single_ref_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "simulate", "--policy", "single-ref", "--n", "30", "--k", "2",
            "--t", "9", "--trials", "100",
        )
        assert code == 2
        assert "--r is required" in err


class TestVerifyCommand:
    def test_passes_and_counts(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--n-max", "4")
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, VERIFY_SCHEMA)
        assert payload["allPass"] is True
        assert "all identities hold" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "3", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "identity,n,k,t,r,instances,result"

    def test_guard_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--n-max", "13")
        assert code == 2
        assert "n_max" in err


class TestOptimizeCommand:
    def test_single_ref_row(self, capsys, golden_table):
        code, out, _ = run_cli(capsys, "optimize", "--k", "5", "--format", "csv")
        assert code == 0
        header, row = out.splitlines()
        assert header == "k,r,c,cr"
        k, r, c, cr = row.split(",")
        want_r, want_c, want_cr = golden_table[5]
        assert (int(k), int(r)) == (5, want_r)
        assert float(c) == pytest.approx(want_c, abs=5e-3)
        assert float(cr) == pytest.approx(want_cr, abs=1e-3)

    def test_optimistic_k2(self, capsys):
        code, out, _ = run_cli(capsys, "optimize", "--optimistic-k2")
        assert code == 0
        payload = json.loads(out)
        assert payload["c"] == pytest.approx(0.3521, abs=2e-3)
        assert payload["cr"] == pytest.approx(0.4169, abs=1e-4)

    def test_bad_k_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "optimize", "--k", "0")
        assert code == 2


class TestOracleCommand:
    def test_counts_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "--n", "4", "--k", "1", "--t", "2", "--r", "1", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "item,slot,count,probability"
        assert lines[1].startswith("1,1,11,")  # 11 of 24 orders take the best item

    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "--policy", "optimistic", "--n", "5", "--k", "2", "--t", "3"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["total"] == 120
        assert sum(map(sum, payload["counts"])) <= 2 * 120


class TestOutputFile:
    def test_writes_file(self, tmp_path, capsys):
        target = tmp_path / "out.csv"
        code, out, _ = run_cli(
            capsys, "table", "--k-max", "2", "--format", "csv", "--output", str(target)
        )
        assert code == 0
        assert out == ""
        content = target.read_text()
        assert content.startswith("k,r,c,cr,kleinberg\n")
        assert "\r" not in content
