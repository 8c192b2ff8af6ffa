import io
import json

import pytest

from app import main as cli
from app.api import measures as measures_api
from app.api import partitions as partitions_api
from app.api import polys as polys_api
from app.api import transform as transform_api
from app.api import verify as verify_api
from app.core import config
from app.core.errors import EXIT_ARGUMENT, EXIT_CAP, EXIT_OK, EXIT_VERIFICATION
from app.services import measures, mobius, partitions, polynomials, transforms, verification
from app.services.verification import SuiteReport


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_kreweras_command():
    code, text = call("partitions", "kreweras", "1 2|3")
    assert code == EXIT_OK
    [record] = records(text)
    assert record["value"] == [[1], [2, 3]]
    assert record["exact"] is True


def test_enumerate_count():
    code, text = call("partitions", "enumerate", "6", "--count")
    assert code == EXIT_OK
    assert records(text)[0]["value"] == {"count": 132, "closed_form": 132}


def test_finite_n_command():
    code, text = call("finite-n", "1 3|2 4", "--process", "poisson", "--t", "1")
    assert code == EXIT_OK
    value = records(text)[0]["value"]
    assert value["laurent"] == {"-1": "2", "-2": "-1", "-3": "-1"}
    assert value["divergent"] is False
    assert value["limit"] == "0"


def test_polys_command():
    code, text = call("polys", "general", "--n-min", "2", "--n-max", "2")
    assert code == EXIT_OK
    [record] = records(text)
    terms = record["value"]["terms"]
    assert terms == [
        {"word": [1, 1], "coefficient": ["1"]},
        {"word": [2], "coefficient": ["-1"]},
    ]


def test_verify_orthogonality_command():
    code, text = call("verify", "orthogonality", "--process", "poisson", "--t", "1", "--max-n", "3")
    assert code == EXIT_OK
    [record] = records(text)
    assert record["value"]["passed"] is True
    gram = record["value"]["details"]["free-poisson,t=1,centered"]
    assert gram == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


@pytest.mark.parametrize(
    "argv",
    [
        ("partitions", "kreweras", "1 2|2 3"),
        ("partitions", "frobnicate"),
        ("st", "1 2", "--t", "abc"),
        ("st", "1 2", "--process", "gaussian"),
        ("partitions", "kreweras", "1 3|2 4"),
    ],
)
def test_argument_errors_exit_one(argv):
    code, text = call(*argv)
    assert code == EXIT_ARGUMENT
    assert text == ""


def test_cap_exit_code():
    code, _ = call("partitions", "enumerate", "40", "--family", "all")
    assert code == EXIT_CAP


def test_verification_exit_code(monkeypatch):
    def broken(opts):
        report = SuiteReport("broken")
        report.check(False, "siempre falla")
        return report

    monkeypatch.setitem(verification.SUITES, "broken", broken)
    code, _ = call("verify", "broken")
    assert code == EXIT_VERIFICATION


def test_csv_output():
    code, text = call("--format", "csv", "partitions", "enumerate", "3")
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    assert "command" in lines[0].split(",")
    assert len(lines) == 1 + 5


def test_output_is_deterministic():
    argv = ("pr", "1 3|2", "--process", "poisson", "--t", "3/2", "--closed-form", "poisson", "--table")
    assert call(*argv) == call(*argv)


REQUIRED = {
    "parse_partition", "enumerate_all", "enumerate_noncrossing", "enumerate_interval",
    "is_noncrossing", "leq", "meet", "join", "opposite", "thicken", "expand", "direct_sum",
    "classify_blocks", "crossing_number", "has_inner_singleton", "kreweras", "mobius_nc", "mobius_p",
    "moments_from_cumulants", "cumulants_from_moments", "m_pi", "r_pi", "alternating_moment",
    "scale_time", "center", "r_series", "s_from_r", "r_from_s", "sandwich_transform",
    "st_expectation", "pr_expectation", "st_from_pr", "pr_from_st", "multiplicativity_check",
    "diagonal_cumulant", "delta_word_moment", "finite_n_expectation", "finite_n_laurent",
    "vanishing_order_check", "inner_singleton_vanishing", "brownian_product_measure",
    "poisson_separation_predicate", "poisson_product_measure", "ito_expand", "ito_expectation",
    "ito_mobius_expand", "sandwich_limit", "ks_general", "ks_centered", "alpha", "beta",
    "specialize_brownian", "specialize_poisson", "poisson_charlier", "compound_ks", "inner_product",
}


def test_every_operation_is_exposed():
    groups = (partitions_api, transform_api, measures_api, polys_api, verify_api)
    services = (partitions, mobius, transforms, measures, polynomials, verification)
    exposed = set()
    for group in groups:
        for name in group.OPERATIONS:
            assert any(hasattr(mod, name) for mod in services), name
            exposed.add(name)
    assert REQUIRED <= exposed


SUBCOMMANDS = [
    ("partitions", "enumerate", "4", "--family", "all"),
    ("partitions", "enumerate", "5", "--family", "interval", "--count"),
    ("partitions", "enumerate", "--refinements-of", "1 3|2 4"),
    ("partitions", "info", "1 4|2 3", "--N", "5", "--thicken", "2", "--expand", "1", "2", "1", "1",
     "--multiple", "2", "--other", "1 2|3 4"),
    ("partitions", "info", "1 3|2 4", "--n", "6"),
    ("partitions", "mobius", "1|2|3", "1 2 3", "--lattice", "p", "--upper", "--lower"),
    ("partitions", "mobius", "1 2|3", "1 2 3"),
    ("partitions", "kreweras", "1 2|3", "--n", "4"),
    ("partitions", "crossing", "1 3 5|2 4 6"),
    ("transform", "m2c", "0", "1", "0", "2", "--partition", "1 2"),
    ("transform", "c2m", "1", "1", "--t", "2", "--center", "--power", "2"),
    ("transform", "alt-moment", "--x-cumulants", "0", "1", "--y-moments", "1", "2", "--n", "2"),
    ("transform", "s-transform", "--cumulants", "1", "1", "1"),
    ("transform", "s-transform", "--moments", "1", "2", "5"),
    ("transform", "s-transform", "--inverse", "1", "-1", "1"),
    ("transform", "convolve", "additive", "--first", "0", "1", "--second", "1", "1"),
    ("transform", "convolve", "multiplicative", "--first", "1", "2", "5", "--second", "1", "1", "1"),
    ("transform", "sandwich", "1", "2", "5"),
    ("st", "1 4|2 3", "--process", "poisson", "--centered", "--table", "--multiplicativity", "--inner-singleton"),
    ("pr", "1 2|3 4", "--table", "--closed-form", "brownian"),
    ("pr", "1 3|2", "--process", "poisson", "--closed-form", "poisson", "--symbolic"),
    ("ito", "1 2|3", "--mobius", "--via-polynomials"),
    ("finite-n", "1 2|3", "--N", "5"),
    ("finite-n", "1 3|2 4", "--process", "poisson", "--vanishing"),
    ("diagonal", "cumulant", "--n", "2", "--k", "1", "--process", "poisson"),
    ("diagonal", "word", "1", "2", "1", "--oracle"),
    ("diagonal", "sandwich", "--m", "1", "1", "--z", "5", "--process", "poisson", "--t", "2"),
    ("polys", "general", "--form", "m", "--n-max", "3"),
    ("polys", "centered", "--form", "compositions", "--n-max", "3"),
    ("polys", "compound", "--generator", "1", "1", "--n-max", "3"),
    ("polys", "beta-route", "--n-max", "3"),
    ("polys", "alpha", "--m", "1", "--n-max", "2"),
    ("polys", "beta", "--m", "1", "--n-max", "2"),
    ("polys", "brownian", "--route", "substitution"),
    ("polys", "poisson"),
    ("polys", "poisson-charlier", "--route", "explicit", "--n-max", "6"),
    ("polys", "chebyshev"),
    ("polys", "chebyshev-composed"),
    ("polys", "general", "--n-max", "3", "--check-orthogonality", "--process", "poisson"),
    ("polys", "centered", "--n-max", "2", "--inner", "2", "2", "--process", "semicircular"),
    ("verify", "transforms", "--max-n", "4"),
    ("verify", "poisson-charlier", "--max-n", "7"),
]


@pytest.mark.parametrize("argv", SUBCOMMANDS, ids=lambda argv: " ".join(argv[:2]))
def test_every_subcommand_runs(argv):
    code, text = call(*argv)
    assert code == EXIT_OK, argv
    assert records(text)


def test_text_output():
    code, text = call("--format", "text", "partitions", "enumerate", "3", "--family", "interval")
    assert code == EXIT_OK
    header, *rows = text.rstrip("\n").splitlines()
    assert header.split() == ["command", "exact", "inputs.family", "inputs.n", "value"]
    assert {row.split()[-1] for row in rows} == {"[[1,2,3]]", "[[1,2],[3]]", "[[1],[2,3]]", "[[1],[2],[3]]"}


def test_text_format_from_environment(monkeypatch):
    monkeypatch.setenv(config.FORMAT_VAR, "text")
    config.get_settings.cache_clear()
    try:
        code, text = call("partitions", "crossing", "1 3|2 4")
    finally:
        config.get_settings.cache_clear()
    assert code == EXIT_OK
    assert text.splitlines()[-1].split()[-1] == "1"
