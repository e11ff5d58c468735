"""File formats and the gk command line: goldens, exit codes, round-trips."""

from __future__ import annotations

import pytest

from garsidekit import catalog
from garsidekit import io_formats as iof
from garsidekit.errors import ParseError, ValidationError

import oracles
from conftest import B3_GAR, KLEIN_GAR, N2_GAR, run_gk

N2_BAD_GAR = """\
[generators]
x
y

[relations]
x y = y x

[garside]
family: x, y
"""

B3_AUTO_GAR = B3_GAR.replace("delta: a b a", "auto")


@pytest.fixture()
def n2_bad_file(tmp_path):
    p = tmp_path / "n2bad.gar"
    p.write_text(N2_BAD_GAR)
    return str(p)


def _witness_chars(text: str) -> tuple[tuple[str, int], ...]:
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[: -len("^-1")], -1))
        elif tok != "1":
            out.append((tok, +1))
    return tuple(out)


# --- file formats, library level ---------------------------------------------------


def test_structure_emission_is_canonical():
    for text in (B3_GAR, N2_GAR, KLEIN_GAR):
        doc = iof.parse_structure(text)
        assert iof.emit_structure(doc) == text
        assert iof.parse_structure(iof.emit_structure(doc)) == doc


def test_structure_doc_reconstruction():
    doc = iof.parse_structure(B3_GAR)
    pres = iof.structure_presentation(doc)
    again = iof.structure_doc(pres, garside=doc.garside)
    assert again == doc


def test_germ_emission_is_canonical():
    germ = catalog.build("dual_braid:3").context.germ
    doc = iof.germ_doc(germ)
    text = iof.emit_germ(doc)
    assert iof.parse_germ(text) == doc
    assert iof.emit_germ(iof.parse_germ(text)) == text
    # identity products are implied by the format, not written out
    assert "1 *" not in text and "* 1 " not in text


def test_germ_doc_implies_identity_products():
    germ = catalog.build("free_abelian:2").context.germ
    rebuilt = iof.germ_from_doc(iof.germ_doc(germ))
    assert rebuilt.product == germ.product


def test_sniff():
    assert iof.sniff(B3_GAR) == "structure"
    assert iof.sniff("[elements]\nx : * -> *\n") == "germ"
    with pytest.raises(ParseError):
        iof.sniff("[what]\n")
    with pytest.raises(ParseError):
        iof.sniff("")


def test_load_text_wires_garside_data():
    loaded = iof.load_text(B3_GAR)
    assert loaded.kind == "structure"
    assert len(loaded.family.elements) == 5
    assert loaded.garside_map is not None
    assert loaded.unbounded is None


def test_load_text_reports_unbounded_family():
    loaded = iof.load_text(N2_BAD_GAR)
    assert loaded.garside_map is None
    assert loaded.unbounded is not None


def test_auto_family_search():
    loaded = iof.load_text(B3_AUTO_GAR)
    assert len(loaded.family.elements) == 5
    shown = {loaded.ctx.show(w) for w in loaded.family.elements}
    assert shown == {"a", "b", "ab", "ba", "aba"}


@pytest.mark.parametrize(
    "text,line,needle",
    [
        ("x\n[generators]\na\n", 1, "before the first section"),
        ("[generators]\na\n[generators]\nb\n", 3, "duplicate section"),
        ("[generators]\na\n\n[relations]\na b = a\n", 5, "unknown generator 'b'"),
        ("[generators]\na\n\n[relations]\na = a = a\n", 5, "exactly one '='"),
        ("[generators]\na\na\n", 3, "duplicate generator"),
        ("[generators]\n1\n", 2, "generator"),
        ("[generators]\na : x -> y\n", 2, "unknown object"),
        ("[generators]\na\n\n[garside]\nnope: a\n", 5, "expected 'auto'"),
        ("[generators]\na\n\n[garside]\nauto\nauto\n", 6, "single line"),
    ],
)
def test_structure_parse_errors_carry_line_numbers(text, line, needle):
    with pytest.raises(ParseError) as err:
        iof.parse_structure(text)
    assert err.value.line == line
    assert needle in str(err.value)


@pytest.mark.parametrize(
    "text,needle",
    [
        ("[elements]\nx : * -> *\n", "missing [identity]"),
        (
            "[elements]\nx : * -> *\n\n[identity]\nx\n\n[product]\nx * y = x\n",
            "unknown element 'y'",
        ),
        (
            "[elements]\nx : * -> *\nx : * -> *\n\n[identity]\nx\n",
            "duplicate element",
        ),
        ("[elements]\ne : * -> *\n\n[identity]\ne\n\n[product]\nbroken\n", "r * s = t"),
    ],
)
def test_germ_parse_errors(text, needle):
    with pytest.raises(ParseError) as err:
        iof.parse_germ(text)
    assert needle in str(err.value)


def test_germ_semantic_errors():
    # identity must be an endomorphism
    doc = iof.parse_germ(
        "[elements]\ne : p -> q\n\n[identity]\ne\n"
    )
    with pytest.raises(ValidationError):
        iof.germ_from_doc(doc)
    # conflicting product rows
    doc = iof.parse_germ(
        "[elements]\n"
        "e : * -> *\n"
        "x : * -> *\n"
        "y : * -> *\n\n"
        "[identity]\ne\n\n"
        "[product]\nx * x = y\nx * x = x\n"
    )
    with pytest.raises(ValidationError):
        iof.germ_from_doc(doc)


# --- CLI goldens --------------------------------------------------------------------


def test_nf_golden(b3_file):
    r = run_gk("nf", b3_file, "-w", "a b a b")
    assert (r.returncode, r.stdout) == (0, "aba.b\n")


def test_nf_delta_golden(b3_file):
    r = run_gk("nf", b3_file, "-w", "a b a b", "--delta")
    assert (r.returncode, r.stdout) == (0, "D^1 . b\n")


def test_nf_signed_golden(b3_file):
    r = run_gk("nf", b3_file, "-w", "a^-1", "--delta")
    assert (r.returncode, r.stdout) == (0, "D^-1 . ab\n")
    r = run_gk("nf", b3_file, "-w", "a^-1")
    assert r.returncode == 2
    assert "--delta" in r.stderr


def test_eq_goldens(b3_file):
    r = run_gk("eq", b3_file, "-w", "a b a a", "-w", "b a b a")
    assert (r.returncode, r.stdout) == (0, "equal\n")
    r = run_gk("eq", b3_file, "-w", "a", "-w", "b")
    assert (r.returncode, r.stdout) == (1, "distinct\n")


def test_lcm_golden(b3_file):
    r = run_gk("lcm", b3_file, "-w", "a", "-w", "b")
    assert (r.returncode, r.stdout) == (0, "a b a\n")


def test_lcm_none_golden(tmp_path):
    p = tmp_path / "free.gar"
    p.write_text("[generators]\na\nb\n")
    r = run_gk("lcm", str(p), "-w", "a", "-w", "b")
    assert (r.returncode, r.stdout) == (0, "none\n")


def test_gcd_goldens(b3_file):
    r = run_gk("gcd", b3_file, "-w", "a b", "-w", "a b a")
    assert (r.returncode, r.stdout) == (0, "a b\n")
    r = run_gk("gcd", b3_file, "-w", "a", "-w", "b")
    assert (r.returncode, r.stdout) == (0, "1\n")


def test_reverse_goldens(b3_file):
    r = run_gk("reverse", b3_file, "-w", "a^-1 b")
    assert (r.returncode, r.stdout) == (0, "b a | a b\n")
    r = run_gk("reverse", b3_file, "-w", "a b")
    assert (r.returncode, r.stdout) == (0, "a b | 1\n")


def test_conj_goldens(b3_file):
    r = run_gk("conj", b3_file, "-w", "a b", "-w", "b a")
    assert r.returncode == 0
    assert r.stdout.startswith("yes witness: ")
    witness = _witness_chars(r.stdout[len("yes witness: ") : -1])
    assert oracles.b3_conjugates_to("ab", "ba", witness)

    r = run_gk("conj", b3_file, "-w", "a", "-w", "a a")
    assert (r.returncode, r.stdout) == (1, "no\n")


def test_sss_golden(b3_file):
    r = run_gk("sss", b3_file, "-w", "a")
    assert (r.returncode, r.stdout) == (0, "a\nb\nwitness: 1\nwitness: b a\n")
    # the listed witnesses map the input onto the listed nodes, in order
    nodes = ["a", "b"]
    witnesses = ["", "b a"]
    for node, wit in zip(nodes, witnesses):
        assert oracles.b3_conjugates_to("a", node, _witness_chars(wit))


def test_sss_two_element_circuit(b3_file):
    r = run_gk("sss", b3_file, "-w", "a b")
    assert r.returncode == 0
    assert r.stdout.splitlines()[:2] == ["ab", "ba"]


def test_check_golden_pass(b3_file):
    r = run_gk("check", b3_file)
    assert r.returncode == 0
    assert r.stdout == (
        "validate: PASS\n"
        "is_garside_family: PASS\n"
        "build_garside_map: PASS\n"
        "cube-condition: PASS\n"
    )


def test_check_klein_partial(klein_file):
    r = run_gk("check", klein_file)
    assert r.returncode == 0
    assert r.stdout == (
        "validate: PASS\n"
        "is_garside_family: N/A\n"
        "build_garside_map: N/A\n"
        "cube-condition: PASS\n"
    )


def test_check_reports_family_failure(n2_bad_file):
    r = run_gk("check", n2_bad_file)
    assert r.returncode == 1
    lines = dict(l.split(": ", 1) for l in r.stdout.splitlines())
    assert lines["is_garside_family"] == "FAIL"
    assert lines["build_garside_map"] == "FAIL"
    assert lines["validate"] == "PASS"
    assert "not closed under right-lcm" in r.stderr
    assert "x, y, xy" in r.stderr


def test_check_germ_file(tmp_path):
    path = tmp_path / "dual3.germ"
    r = run_gk("catalog", "dual_braid:3", "--emit", str(path))
    assert r.returncode == 0
    r = run_gk("check", str(path))
    assert r.returncode == 0
    assert r.stdout == (
        "validate: PASS\n"
        "is_garside_family: PASS\n"
        "build_garside_map: PASS\n"
        "cube-condition: N/A\n"
    )


def test_catalog_golden():
    r = run_gk("catalog", "braid:3")
    assert r.returncode == 0
    head = r.stdout.splitlines()[:5]
    assert head == [
        "key: braid:3",
        "kind: germ",
        "generators: 5",
        "simples: 6",
        "delta: aba",
    ]
    assert r.stdout.splitlines()[5].startswith("notes: ")


def test_catalog_emit_round_trips(tmp_path):
    path = tmp_path / "fa2.germ"
    r = run_gk("catalog", "free_abelian:2", "--emit", str(path))
    assert r.returncode == 0
    text = path.read_text()
    assert iof.emit_any(iof.parse_any(text)) == text
    r = run_gk("check", str(path))
    assert r.returncode == 0
    r = run_gk("nf", str(path), "-w", "x y")
    assert (r.returncode, r.stdout) == (0, "xy\n")


def test_germ_file_normal_form(tmp_path):
    path = tmp_path / "dual3.germ"
    run_gk("catalog", "dual_braid:3", "--emit", str(path))
    r = run_gk("nf", str(path), "-w", "c12 c13")
    assert (r.returncode, r.stdout) == (0, "c123\n")


def test_auto_family_via_cli(tmp_path):
    p = tmp_path / "b3auto.gar"
    p.write_text(B3_AUTO_GAR)
    r = run_gk("nf", str(p), "-w", "a b a b")
    assert (r.returncode, r.stdout) == (0, "aba.b\n")


def test_eq_klein_via_file(klein_file):
    r = run_gk("eq", klein_file, "-w", "a", "-w", "b a b")
    assert (r.returncode, r.stdout) == (0, "equal\n")
    # without a certified-complete complement the negative side is honest
    # about being undecided at the configured limits
    r = run_gk("eq", klein_file, "-w", "a b", "-w", "b a")
    assert r.returncode == 2
    assert "inconclusive" in r.stderr


# --- exit code 2 paths ----------------------------------------------------------------


def test_parse_error_exit(tmp_path):
    p = tmp_path / "bad.gar"
    p.write_text("[generators]\na\n\n[relations]\na b = a\n")
    r = run_gk("check", str(p))
    assert r.returncode == 2
    assert "line 5" in r.stderr and "'b'" in r.stderr and r.stdout == ""


def test_missing_file_exit(tmp_path):
    r = run_gk("nf", str(tmp_path / "absent.gar"), "-w", "a")
    assert r.returncode == 2
    assert "absent.gar" in r.stderr


def test_unknown_catalog_key_exit():
    r = run_gk("catalog", "nope:1")
    assert r.returncode == 2
    assert "unknown catalog key" in r.stderr
    assert "braid:3" in r.stderr  # lists the available keys


def test_wrong_word_count_exit(b3_file):
    r = run_gk("eq", b3_file, "-w", "a")
    assert r.returncode == 2
    assert "expected exactly 2" in r.stderr


def test_unknown_generator_in_word_exit(b3_file):
    r = run_gk("eq", b3_file, "-w", "a c", "-w", "a")
    assert r.returncode == 2
    assert "unknown generator 'c'" in r.stderr


def test_needs_garside_data_exit(klein_file):
    r = run_gk("nf", klein_file, "-w", "a b")
    assert r.returncode == 2
    assert "[garside]" in r.stderr


def test_unknown_flag_exit(b3_file):
    r = run_gk("nf", b3_file, "-w", "a", "--frobnicate")
    assert r.returncode == 2


# --- limit flags -----------------------------------------------------------------------


def test_limit_flags_are_applied(b3_file):
    r = run_gk("sss", b3_file, "-w", "a", "--limit-node-budget", "1")
    assert r.returncode == 2
    assert "budget" in r.stderr

    r = run_gk("check", b3_file, "--limit-cube-depth", "2")
    assert r.returncode == 0
    assert "cube-condition: PASS" in r.stdout


def test_limit_flag_rejects_garbage(b3_file):
    r = run_gk("nf", b3_file, "-w", "a", "--limit-fuel-factor", "lots")
    assert r.returncode == 2
