import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import GL_ROWS
from concordance_lab.catalog import get
from concordance_lab.cli import main
from concordance_lab.infection import ObstructionReport, SeifertLeaf, Sum, leaf
from concordance_lab.io import ParseError, emit, parse_input, parse_text
from concordance_lab.seifert import SeifertForm

GL_TEXT = "seifert 2\n0 1\n2 0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParsing:
    def test_gl_text(self, tmp_path):
        f = tmp_path / "gl.txt"
        f.write_text("# genus one\nseifert 2\n0 1\n\n2 0\n")
        d = parse_input(f)
        assert d == SeifertLeaf(SeifertForm.from_rows(GL_ROWS))

    def test_odd_dimension(self):
        with pytest.raises(ParseError, match="odd dimension"):
            parse_text("seifert 3\n0 1 0\n0 0 0\n0 0 0\n")

    def test_degenerate_names_invariant(self):
        with pytest.raises(ParseError, match="unimodular") as e:
            parse_text("seifert 2\n0 0\n0 0\n")
        assert e.value.line == 1

    def test_bad_entry_position(self):
        with pytest.raises(ParseError) as e:
            parse_text("seifert 2\n0 1\n2  x\n")
        assert (e.value.line, e.value.col) == (3, 4)
        assert str(e.value).startswith("<input>:3:4:")

    def test_row_count(self):
        with pytest.raises(ParseError, match="expected 2 matrix rows"):
            parse_text("seifert 2\n0 1\n")

    def test_short_row(self):
        with pytest.raises(ParseError, match="row has 1 entries") as e:
            parse_text("seifert 2\n0\n2 0\n")
        assert e.value.line == 2

    def test_bad_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_text("matrix 2\n0 1\n2 0\n")

    def test_json_syntax_error(self):
        with pytest.raises(ParseError) as e:
            parse_text('{\n  "kind": "leaf",\n  "matrix": [[0, 1], [2, 0]\n}\n')
        assert e.value.line == 4

    def test_json_unknown_kind(self):
        with pytest.raises(ParseError, match="unknown kind"):
            parse_text('{"kind": "braid"}')

    def test_json_signature_and_ref(self):
        d = parse_text(json.dumps({
            "kind": "infection", "seed": {"kind": "ref", "name": "gl"},
            "infections": [{
                "axis": {"class": ["0", "1"], "label": "eta2"},
                "companion": {"kind": "signature", "steps": [["0", 0], ["2/5", 2], ["3/5", 0]], "arf": 0, "name": "J"},
            }],
        }))
        assert d == get("thm15").descriptor

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            parse_input(tmp_path / "nope.txt")


class TestRoundTrip:
    def test_seifert_text_byte_identical(self):
        assert emit(parse_text(GL_TEXT)) == GL_TEXT

    @pytest.mark.parametrize("name", ["gl", "seed_k", "thm15", "thm10", "unknot"])
    def test_catalog_json_byte_identical(self, name):
        text = emit(get(name).descriptor)
        assert emit(parse_text(text)) == text
        assert parse_text(text) == get(name).descriptor

    def test_sum(self):
        d = Sum((leaf(GL_ROWS, "a"), leaf([[-1, 1], [0, -1]], "b")))
        assert parse_text(emit(d)) == d


class TestCommands:
    def test_invariants_gl(self, capsys):
        code, out, _ = run(capsys, "invariants", "--knot", "gl")
        assert code == 0
        assert "alexander polynomial: 2 - 5t + 2t^2" in out
        assert "arf: 0" in out
        assert "Q[t,1/t]/(1 - 2t)" in out and "Q[t,1/t]/(2 - t)" in out

    def test_invariants_json(self, capsys):
        code, out, _ = run(capsys, "invariants", "--knot", "gl", "--json")
        data = json.loads(out)
        assert code == 0 and data["alexander_polynomial"] == "2 - 5t + 2t^2" and data["arf"] == 0

    def test_invariants_from_file(self, capsys, tmp_path):
        f = tmp_path / "k.txt"
        f.write_text(GL_TEXT)
        code, out, _ = run(capsys, "invariants", "--knot", str(f), "--json")
        assert code == 0 and json.loads(out)["alexander_polynomial"] == "2 - 5t + 2t^2"

    def test_family_count(self, capsys):
        code, out, _ = run(capsys, "family", "--a", "1", "--c", "3", "--n", "3", "--count")
        assert code == 0 and out.strip() == "9"

    def test_family_listing(self, capsys):
        code, out, _ = run(capsys, "family", "--a", "2", "--c", "4", "--n", "2", "--json")
        data = json.loads(out)
        assert code == 0 and len(data["pairs"]) == 3
        assert [p["derivation"] for p in data["pairs"]] == [[1], [2], [3]]

    def test_classify_single_axis(self, capsys):
        code, out, _ = run(capsys, "classify", "--knot", "thm15", "--bound", "2")
        assert code == 0 and "double_one_five: obstructed" in out

    def test_classify_json_has_every_report_field(self, capsys):
        code, out, _ = run(capsys, "classify", "--knot", "thm10", "--json", "--cm", "1/5")
        data = json.loads(out)
        assert code == 0
        assert set(ObstructionReport.__dataclass_fields__) <= set(data)
        assert data["double_one_five"] == "obstructed" and data["cm"] == "1/5"

    def test_rho_exact_output(self, capsys):
        code, out, _ = run(capsys, "rho", "--knot", "thm15")
        assert code == 0 and "rho_Z = 2/5" in out and "interval" not in out

    def test_rho_interval_flagged(self, capsys, tmp_path):
        f = tmp_path / "five_two.txt"
        f.write_text("seifert 2\n-1 1\n0 -2\n")
        code, out, _ = run(capsys, "rho", "--knot", str(f))
        assert code == 0 and "(interval)" in out

    def test_blanchfield_gl(self, capsys):
        code, out, _ = run(capsys, "blanchfield", "--knot", "gl", "--json")
        data = json.loads(out)
        assert code == 0 and data["hermitian"] and len(data["self_annihilating"]) == 2

    def test_metabolizer(self, capsys):
        code, out, _ = run(capsys, "metabolizer", "--knot", "seed_k", "--json")
        data = json.loads(out)
        assert code == 0 and data["metabolizer"] is not None and data["hyperbolic"] is not None

    def test_catalog(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0
        assert {ln.split("\t")[0] for ln in out.splitlines()} == {
            "unknot", "trefoil_right", "seed_k", "gl", "thm15", "thm10"}


class TestExitCodes:
    def test_unsupported_shape(self, capsys):
        code, out, _ = run(capsys, "blanchfield", "--knot", "seed_k")
        assert code == 2 and "unsupported" in out

    def test_parse_error(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("seifert 3\n0 1 0\n0 0 0\n0 0 0\n")
        code, _, err = run(capsys, "invariants", "--knot", str(f))
        assert code == 1 and "odd dimension" in err

    def test_unknown_catalog_name(self, capsys):
        code, _, err = run(capsys, "invariants", "--knot", "figure_eight")
        assert code == 1 and "unknown catalog knot" in err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["frobnicate"])
        assert e.value.code == 1

    def test_bad_family_label(self, capsys):
        code, _, err = run(capsys, "family", "--a", "3")
        assert code == 1 and "label" in err

    def test_bad_bound(self, capsys):
        code, _, _ = run(capsys, "classify", "--knot", "gl", "--bound", "0")
        assert code == 1

    def test_signature_only_knot_has_no_form(self, capsys, tmp_path):
        f = tmp_path / "j.json"
        f.write_text(json.dumps({"kind": "signature", "steps": [["0", 0], ["2/5", 2], ["3/5", 0]]}))
        code, _, err = run(capsys, "invariants", "--knot", str(f))
        assert code == 1 and "signature-only" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "concordance_lab", "family", "--n", "2", "--count"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip() == "3"
