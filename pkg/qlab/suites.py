"""
Named verification suites.

A suite builds its objects once and runs groups of checks against them. A
library error inside a group becomes a failed check carrying the error text,
so one broken identity does not hide the others; an enumeration cap or an
unsupported field turns into a skip with the reason.
"""
import dataclasses
import logging
import time
from fractions import Fraction
from math import comb

from .conf import setting
from .dualpolar import (
    SymplecticSpace, check_distance_regularity, check_dqk_identity, check_intersection_formulas,
    check_ttr2, dual_polar_graph, eigenvalue_formula, intersection_distance, lagrangian_count,
    multiplicities_from_array, printed_vertex_count, symmetric_bracket_ttr2,
)
from .errors import LimitExceeded, NotPrimePower, OutOfRange, QlabError
from .exact import QuarterInt
from .fields import field_new
from .hypercube import (
    CubeContext, build_Aq, build_Aq_tensor, check_aq_forms, check_hamming_recurrence,
    check_kp_identity, check_tensor_generators, hamming_distance_matrices,
)
from .lattice import build_lattice, build_RLKE, check_incidence_structure, check_uq_relations
from .linalg import _rref_rows, subspace_count
from .quotient import (
    build_zeta, check_action_formulas, check_quotient_identity, check_submodule_closure,
    check_zeta_structure,
)
from .reports import FAIL, CheckResult, SuiteReport, bool_check, exact_check, skip
from .schemes import (
    SchemeData, check_idempotents, check_krein_nonnegative, check_P_and_Q_polynomial,
    check_terwilliger_dimension, dual_adjacency, rational_roots, scheme_summary, spectrum_check,
)
from .wsdecomp import check_ws_decomposition

logger = logging.getLogger(__name__)

# vertex pairs compared against the row-reduction distance
DISTANCE_SAMPLE = 40


class SuiteSkipped(Exception):
    """The requested parameters lie outside what a suite supports."""


class SuiteRunner:
    def __init__(self, report):
        self.report = report
        self.data = report.data

    @property
    def params(self):
        return self.report.parameters

    def group(self, label, thunk):
        """Run ``thunk`` (returning a list of checks) and add its checks."""
        start = time.perf_counter()
        try:
            checks = list(thunk())
        except LimitExceeded as e:
            logger.warning(f"{self.report.suite}: {label} skipped: {str(e)}")
            checks = [skip(label, str(e))]
        except QlabError as e:
            logger.error(f"{self.report.suite}: {label} failed: {str(e)}")
            checks = [CheckResult(label, FAIL, residual="-", witness=str(e))]
        elapsed = time.perf_counter() - start
        for check in checks:
            check.seconds = elapsed / len(checks)
            self.report.add(check)
        return checks


def _field(q):
    try:
        return field_new(q)
    except (NotPrimePower, OutOfRange) as e:
        raise SuiteSkipped(str(e)) from e


# -- individual suites ----------------------------------------------------------


def lattice_uq_suite(run):
    n, q = run.params["n"], run.params["q"]
    F = _field(q)
    try:
        ctx = build_lattice(n, F, run.params["limit"])
    except LimitExceeded as e:
        raise SuiteSkipped(str(e)) from e
    ops = build_RLKE(ctx)
    expected = subspace_count(n, q)
    run.data["vertices"] = len(ctx.vertices)
    run.group("vertex count", lambda: [
        bool_check(f"|L_{n}({q})| = sum_k [{n} k]_q", len(ctx.vertices) == expected,
                   f"{len(ctx.vertices)} vs {expected}"),
    ])
    run.group("U_sqrt(q)(su(2)) relations", lambda: check_uq_relations(ctx, ops))
    run.group("incidence structure", lambda: check_incidence_structure(ctx, ops))


def cube_tensor_suite(run):
    n, q = run.params["n"], run.params["q"]
    if q < 2:
        raise SuiteSkipped(f"base q={q} must be at least 2")
    limit = setting('CUBE_LIMIT')
    if n > limit:
        raise SuiteSkipped(f"N={n} exceeds the cube limit {limit}")
    for scale in (QuarterInt(4), QuarterInt(-2)):
        ctx = CubeContext(n, q, scale)
        run.group(f"A_q forms at t={scale}", lambda: check_aq_forms(ctx))
        run.group(f"tensor generators at t={scale}", lambda: check_tensor_generators(ctx))
    if n < 1:
        run.report.add(skip("t=0 specialisation", "Q_0 has no edges"))
        return

    def flat():
        ctx = CubeContext(n, q, QuarterInt(0))
        adjacency = hamming_distance_matrices(n)[1].over(ctx.ring)
        return [
            exact_check("A_q at t=0 = hypercube adjacency", build_Aq(ctx), adjacency),
            exact_check("tensor form at t=0 = hypercube adjacency", build_Aq_tensor(ctx), adjacency),
        ]

    run.group("t=0 specialisation", flat)


def hamming_suite(run):
    n = run.params["n"]
    try:
        A = hamming_distance_matrices(n)
    except (LimitExceeded, OutOfRange) as e:
        raise SuiteSkipped(str(e)) from e
    run.group("three-term recurrence", lambda: check_hamming_recurrence(n, A))
    run.group("Krawtchouk expansion", lambda: check_kp_identity(n, A))

    def regularity():
        checks, array = check_distance_regularity(A)
        run.data["intersection_array"] = array
        checks.append(bool_check("b_i = N - i and c_i = i",
                                 array["b"] == [n - i for i in range(n)]
                                 and array["c"] == list(range(1, n + 1)), str(array)))
        thetas = rational_roots(_intersection_rows(array))
        expected = [Fraction(n - 2 * i) for i in range(n + 1)]
        checks.append(bool_check("eigenvalues N - 2i", thetas == expected, str([str(t) for t in thetas])))
        return checks

    run.group("distance regularity", regularity)


def quotient_suite(run):
    n, q = run.params["n"], run.params["q"]
    F = _field(q)
    try:
        zeta = build_zeta(n, F, run.params["limit"])
    except LimitExceeded as e:
        raise SuiteSkipped(str(e)) from e
    ops = build_RLKE(zeta.lattice)
    run.group("quotient identity", lambda: check_quotient_identity(n, F, zeta, ops))
    run.group("action formulas", lambda: check_action_formulas(n, F, zeta, ops))
    run.group("submodule closure", lambda: check_submodule_closure(n, F, zeta, ops))
    run.group("zeta structure", lambda: check_zeta_structure(n, F, zeta, ops))


def _graph(run):
    d, q = run.params["d"], run.params["q"]
    F = _field(q)
    try:
        return dual_polar_graph(d, F, run.params["limit"])
    except LimitExceeded as e:
        raise SuiteSkipped(str(e)) from e


def _intersection_rows(array):
    """Tridiagonal intersection matrix (B_1)_(k,i) = p_1i^k from (b, c, a)."""
    b, c, a = array["b"], array["c"], array["a"]
    N = len(b)
    rows = [[0] * (N + 1) for _ in range(N + 1)]
    for k in range(N + 1):
        rows[k][k] = a[k]
        if k:
            rows[k][k - 1] = c[k - 1]
        if k < N:
            rows[k][k + 1] = b[k]
    return rows


def dualpolar_drg_suite(run):
    G = _graph(run)
    d, q = G.d, G.q
    run.data["vertices"] = G.size
    run.data["printed_vertex_count"] = printed_vertex_count(d, q)

    def vertices():
        space = SymplecticSpace(d, G.space.field)
        bad = next((v.label() for v in G.vertices
                    if len(v.rows) != d or not space.is_isotropic(v.rows)
                    or tuple(tuple(r) for r in _rref_rows(v.rows, space.field)[0]) != v.rows), None)
        return [
            bool_check(f"|C_{d}({q})| = prod (1 + q^i)", G.size == lagrangian_count(d, q),
                       f"{G.size} vs {lagrangian_count(d, q)}"),
            bool_check("vertices distinct", len(set(G.vertices)) == G.size),
            bool_check("vertices are canonical Lagrangians", bad is None, bad),
        ]

    def distances():
        sample = G.vertices[:DISTANCE_SAMPLE]
        bad = None
        for a, U in enumerate(sample):
            for b, V in enumerate(sample):
                if G.distance[a, b] != intersection_distance(G.space, U, V):
                    bad = bad or f"({U.label()}, {V.label()})"
        return [bool_check("rank(U J V^T) = d - dim(U cap V)", bad is None, bad)]

    def regularity():
        checks, array = check_distance_regularity(G)
        run.data["intersection_array"] = array
        checks.extend(check_intersection_formulas(G, array))
        thetas = rational_roots(_intersection_rows(array))
        expected = [Fraction(t) for t in eigenvalue_formula(d, q)]
        checks.append(bool_check("theta_j = q [d-j] - [j]", thetas == expected, str([str(t) for t in thetas])))
        mult = multiplicities_from_array(array, thetas)
        run.data["spectrum"] = {str(t): str(m) for t, m in zip(thetas, mult)}
        k = array["b"][0] if array["b"] else 0
        checks.append(bool_check("sum m_j = |X|, sum m_j theta_j = 0, sum m_j theta_j^2 = k |X|",
                                 all(m.denominator == 1 for m in mult)
                                 and sum(mult) == G.size
                                 and sum(m * t for m, t in zip(mult, thetas)) == 0
                                 and sum(m * t * t for m, t in zip(mult, thetas)) == k * G.size,
                                 str(run.data["spectrum"])))
        return checks

    run.group("vertex set", vertices)
    run.group("distance function", distances)
    run.group("distance regularity", regularity)
    def recurrence():
        checks = check_ttr2(G)
        run.data["ttr2_brackets"] = symmetric_bracket_ttr2(G)
        return checks

    run.group("three-term recurrence", recurrence)


def dualpolar_dqk_suite(run):
    G = _graph(run)

    def identity():
        checks, convention = check_dqk_identity(G)
        run.data["convention"] = convention
        return checks

    run.group("dual q-Krawtchouk expansion", identity)


def _scheme_checks(run, S, expected, spectrum):
    """``spectrum`` returns the expected {eigenvalue: multiplicity} of A_1."""
    prefix = f"{S.name}: "

    def named(checks):
        for check in checks:
            check.name = prefix + check.name
        return checks

    run.group(prefix + "axioms", lambda: named(S.axioms[0]))
    run.group(prefix + "eigenvalues", lambda: named([
        bool_check("eigenvalues of A_1", S.eigenvalues == expected, str([str(t) for t in S.eigenvalues])),
    ]))
    run.group(prefix + "spectrum", lambda: named([
        spectrum_check("A_1 spectrum with idempotent-trace multiplicities", S, spectrum()),
    ]))
    run.group(prefix + "idempotents", lambda: named(check_idempotents(S)))
    run.group(prefix + "Krein parameters", lambda: named(check_krein_nonnegative(S)))
    run.group(prefix + "dual adjacency", lambda: named(dual_adjacency(S)[1]))
    run.group(prefix + "P- and Q-polynomial", lambda: named(check_P_and_Q_polynomial(S)))

    def terwilliger():
        checks, data = check_terwilliger_dimension(S, tol=run.params["tol"])
        if data:
            run.data.setdefault("terwilliger", {})[S.name] = data
        return named(checks)

    run.group(prefix + "Terwilliger dimension", terwilliger)
    run.group(prefix + "summary", lambda: _summarise(run, S))


def _summarise(run, S):
    run.data.setdefault("schemes", {})[S.name] = scheme_summary(S)
    return []


def scheme_suite(run):
    n, d, q = run.params["n"], run.params["d"], run.params["q"]
    try:
        hamming = SchemeData(hamming_distance_matrices(n), f"H({n},2)")
    except (LimitExceeded, OutOfRange) as e:
        run.report.add(skip(f"H({n},2)", str(e)))
    else:
        _scheme_checks(run, hamming, [Fraction(n - 2 * i) for i in range(n + 1)],
                       lambda: {n - 2 * i: comb(n, i) for i in range(n + 1)})
    G = _graph(run)
    thetas = [Fraction(t) for t in eigenvalue_formula(d, q)]

    def dual_polar_spectrum():
        _, array = check_distance_regularity(G)
        return dict(zip(thetas, multiplicities_from_array(array, thetas)))

    _scheme_checks(run, SchemeData(G.matrices, f"C_{d}({q})"), thetas, dual_polar_spectrum)


def ws_decomp_suite(run):
    G = _graph(run)

    def decomposition():
        checks, data = check_ws_decomposition(G, tol=run.params["tol"], limit=run.params["limit"])
        run.data.update(data)
        return checks

    run.group("W(S) decomposition", decomposition)


SUITES = {
    "lattice-uq": lattice_uq_suite,
    "cube-tensor": cube_tensor_suite,
    "hamming": hamming_suite,
    "quotient": quotient_suite,
    "dualpolar-drg": dualpolar_drg_suite,
    "dualpolar-dqk": dualpolar_dqk_suite,
    "scheme": scheme_suite,
    "ws-decomp": ws_decomp_suite,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def suite_parameters(n=None, d=None, q=None, tol=None, limit=None):
    return {
        "n": setting('DEFAULT_N', n),
        "d": setting('DEFAULT_D', d),
        "q": setting('DEFAULT_Q', q),
        "tol": setting('TOLERANCE', tol),
        "limit": limit,
    }


def _run_one(name, parameters):
    report = SuiteReport(name, dict(parameters))
    start = time.perf_counter()
    try:
        SUITES[name](SuiteRunner(report))
    except SuiteSkipped as e:
        logger.warning(f"Suite {name} skipped: {str(e)}")
        report.add(skip(name, str(e)))
    except QlabError as e:
        logger.error(f"Suite {name} failed: {str(e)}")
        report.add(CheckResult(name, FAIL, residual="-", witness=str(e)))
    logger.info(f"Suite {name} finished in {time.perf_counter() - start:.2f}s: {report.counts()}")
    return report


def run_suite(name, n=None, d=None, q=None, tol=None, limit=None):
    """Run a named suite; ``all`` runs every suite and prefixes check names with the suite."""
    if name not in SUITE_NAMES:
        raise KeyError(f"unknown suite {name!r}")
    parameters = suite_parameters(n, d, q, tol, limit)
    if name != "all":
        return _run_one(name, parameters)
    report = SuiteReport("all", parameters)
    for sub in SUITES:
        part = _run_one(sub, parameters)
        for check in part.checks:
            report.add(dataclasses.replace(check, name=f"{sub}/{check.name}"))
        report.data[sub] = part.data
    return report
