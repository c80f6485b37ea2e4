"""Matrix file parsing, subcommand behavior, exit codes, JSON stability."""

import io
import json

import pytest

from canonforms.algebra import GF, QQ
from canonforms.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_REFUSED,
    MatrixParseError,
    parse_matrix,
    print_matrix,
    run,
)
from canonforms.matrix import Mat

from fractions import Fraction


CHAIN3_TEXT = """FIELD Q
ROWS 3 COLS 3
1 -1 0
-1 2 1
0 1 1
"""


def invoke(args):
    buf = io.StringIO()
    code = run(args, out=buf)
    return code, buf.getvalue()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


# ---------------------------------------------------------------------------
# parsing


def test_parse_chain3():
    m = parse_matrix(CHAIN3_TEXT)
    assert m == Mat(QQ, [[1, -1, 0], [-1, 2, 1], [0, 1, 1]])


def test_parse_gf_reduction():
    m = parse_matrix("FIELD GF 2\nROWS 1 COLS 1\n5\n")
    assert m == Mat(GF(2), [[1]])


def test_parse_rationals():
    m = parse_matrix("FIELD Q\nROWS 2 COLS 2\n1/2 0\n0 -3/4\n")
    assert m[0, 0] == Fraction(1, 2)
    assert m[1, 1] == Fraction(-3, 4)


def test_parse_comments_and_whitespace():
    text = "# heading\nFIELD Q  # trailing\nROWS 1 COLS 2\n  7   8\n"
    assert parse_matrix(text) == Mat(QQ, [[7, 8]])


def test_print_parse_print_fixed_point():
    for m in (Mat(QQ, [[Fraction(1, 2), -3], [0, 4]]),
              Mat(GF(7), [[1, 6], [0, 3]])):
        text = print_matrix(m)
        again = print_matrix(parse_matrix(text))
        assert text == again
        assert parse_matrix(text) == m


@pytest.mark.parametrize("text,needle", [
    ("FIELD R\nROWS 1 COLS 1\n1\n", "unknown field"),
    ("FIELD GF 6\nROWS 1 COLS 1\n1\n", "not prime"),
    ("FIELD Q\nROWS 1 COLS 2\n1\n", "unexpected end"),
    ("FIELD Q\nROWS 1 COLS 1\n1 2\n", "wrong entry count"),
    ("FIELD Q\nROWS 1 COLS 1\n1/0\n", "zero denominator"),
    ("FIELD Q\nROWS 1 COLS 1\nx\n", "malformed entry"),
    ("FIELD GF 5\nROWS 1 COLS 1\n1/2\n", "GF entries are integers"),
])
def test_parse_errors_have_positions(text, needle):
    with pytest.raises(MatrixParseError) as exc:
        parse_matrix(text)
    assert needle in str(exc.value)
    assert exc.value.line >= 1 and exc.value.col >= 1


# ---------------------------------------------------------------------------
# subcommands


def test_eldiv_output(tmp_path):
    path = write(tmp_path, "a.mat", CHAIN3_TEXT)
    code, out = invoke(["eldiv", path])
    assert code == EXIT_OK
    assert out.strip() == "(λ), (λ-1), (λ-3)"


def test_smith_reports_unimodular(tmp_path):
    path = write(tmp_path, "a.mat", CHAIN3_TEXT)
    code, out = invoke(["smith", path, "--no-transform"])
    assert code == EXIT_OK
    assert "diagonal: 1, 1" in out
    assert "unimodular" in out


def test_similar_not_similar_exit_zero(tmp_path):
    a = write(tmp_path, "a.mat", CHAIN3_TEXT)
    b = write(tmp_path, "b.mat",
              "FIELD Q\nROWS 3 COLS 3\n1 0 0\n0 2 0\n0 0 3\n")
    code, out = invoke(["similar", a, b])
    assert code == EXIT_OK
    assert "NOT SIMILAR" in out


def test_similar_with_witness(tmp_path):
    a = write(tmp_path, "a.mat", "FIELD Q\nROWS 2 COLS 2\n1 1\n0 2\n")
    b = write(tmp_path, "b.mat", "FIELD Q\nROWS 2 COLS 2\n2 0\n1 1\n")
    code, out = invoke(["similar", a, b])
    assert code == EXIT_OK
    assert out.startswith("SIMILAR")


def test_jordan_refusal_exit_2(tmp_path):
    # companion of an irreducible quadratic over GF(2)
    path = write(tmp_path, "c.mat", "FIELD GF 2\nROWS 2 COLS 2\n0 1\n1 1\n")
    code, out = invoke(["jordan", path])
    assert code == EXIT_REFUSED
    assert "does not split" in out
    assert "x^2+x+1" in out or "λ^2+λ+1" in out
    assert "primary" in out
    code2, out2 = invoke(["primary", path])
    assert code2 == EXIT_OK and "verified: True" in out2


def test_pencil_equiv_singular_refused(tmp_path):
    z = write(tmp_path, "z.mat", "FIELD Q\nROWS 2 COLS 2\n0 0\n0 0\n")
    code, out = invoke(["pencil-equiv", z, z, z, z])
    assert code == EXIT_REFUSED


def test_pencil_eldiv_reports_singular(tmp_path):
    z = write(tmp_path, "z.mat", "FIELD Q\nROWS 2 COLS 2\n0 0\n0 0\n")
    code, out = invoke(["pencil-eldiv", z, z])
    assert code == EXIT_OK
    assert "SINGULAR" in out
    assert "out of scope" in out


def test_pencil_canon_roundtrip(tmp_path):
    p = write(tmp_path, "p.mat", "FIELD Q\nROWS 2 COLS 2\n1 0\n0 1\n")
    q = write(tmp_path, "q.mat", "FIELD Q\nROWS 2 COLS 2\n-1 0\n0 -2\n")
    code, out = invoke(["pencil-canon", p, q])
    assert code == EXIT_OK
    assert "canonical pair" in out


def test_kron_form_cli():
    code, out = invoke(["kron-form", "--kind", "II", "--size", "6"])
    assert code == EXIT_OK and "[exact]" in out
    code, out = invoke(["kron-form", "--kind", "III", "--size", "4",
                        "--a", "3", "--b", "-1"])
    assert code == EXIT_OK and ("[exact]" in out or "up to sign" in out)


def test_kron_form_bad_parameters():
    code, _ = invoke(["kron-form", "--kind", "III", "--size", "4",
                      "--a", "2", "--b", "2"])
    assert code == EXIT_INPUT


def test_oscillate_output(tmp_path):
    m = write(tmp_path, "m.mat", "FIELD Q\nROWS 2 COLS 2\n1 0\n0 1\n")
    code, out = invoke(["oscillate", m, m])
    assert code == EXIT_OK
    assert "verdict (Lagrange 1766):    conditional" in out
    assert "verdict (Weierstrass 1858): stable" in out
    assert "t does NOT leave the sine" in out


def test_oscillate_rejects_indefinite_mass(tmp_path):
    m = write(tmp_path, "m.mat", "FIELD Q\nROWS 2 COLS 2\n-1 0\n0 1\n")
    code, _ = invoke(["oscillate", m, m])
    assert code == EXIT_INPUT


def test_verify_all_pass(tmp_path):
    path = write(tmp_path, "a.mat", CHAIN3_TEXT)
    code, out = invoke(["verify", path, "--seed", "5"])
    assert code == EXIT_OK
    assert "FAIL" not in out
    assert "all identities hold" in out


def test_input_error_missing_file():
    code, _ = invoke(["eldiv", "/nonexistent/file.mat"])
    assert code == EXIT_INPUT


# ---------------------------------------------------------------------------
# machine output


def test_json_byte_identical_runs(tmp_path):
    path = write(tmp_path, "a.mat", CHAIN3_TEXT)
    outputs = set()
    for _ in range(2):
        code, out = invoke(["eldiv", "--json", path])
        assert code == EXIT_OK
        outputs.add(out)
    assert len(outputs) == 1
    payload = json.loads(out)
    assert payload["kind"] == "eldiv"
    assert payload["invariants"]["elementary_divisors"] == \
        ["(x)", "(x-1)", "(x-3)"]
    assert payload["verified"] is True
    assert len(payload["input_digest"]) == 64


def test_json_no_transform_drops_transforms(tmp_path):
    path = write(tmp_path, "a.mat", CHAIN3_TEXT)
    _, with_t = invoke(["jordan", "--json", path])
    _, without_t = invoke(["jordan", "--json", "--no-transform", path])
    assert "transforms" in json.loads(with_t)
    assert "transforms" not in json.loads(without_t)


def test_json_machine_variable_is_x(tmp_path):
    path = write(tmp_path, "a.mat", CHAIN3_TEXT)
    _, out = invoke(["invfactors", "--json", path])
    payload = json.loads(out)
    assert payload["invariants"]["invariant_factors"] == \
        ["1", "1", "x^3-4x^2+3x"]
    assert "λ" not in out
