"""Named verification suites over a fixture, and the full JSON report."""

from dataclasses import dataclass, field as dc_field

from . import registry
from .core import check_axioms, fullness, base_L
from .report import Check, Report

SCHEMA = 1
SUITES = ("axioms", "identities", "comodules", "monoidal", "integrals", "duality", "hopf")


@dataclass
class SuiteResult:
    name: str
    report: Report
    skipped: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return self.report.ok

    def as_dict(self):
        return {
            "suite": self.name,
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.report.checks],
            "skipped": list(self.skipped),
        }


def _prefixed(rep, prefix, checks):
    for c in checks:
        rep.add(Check("%s/%s" % (prefix, c.name), c.ok, c.witness, c.detail))


def _guard(rep, skipped, prefix, fn):
    """Run fn(); a structural precondition that fails is recorded as skipped."""
    from .core import NotFull, IllDefined
    from .antipode import NoAntipode, Inconsistent
    try:
        return fn()
    except (NotFull, NoAntipode) as e:
        skipped.append("%s (%s)" % (prefix, e))
    except (IllDefined, Inconsistent, ArithmeticError, ValueError) as e:
        rep.add(Check(prefix, False, detail="%s: %s" % (type(e).__name__, e)))
    return None


def _scope(rep, skipped, prefix, scope, ctx):
    r, sk = registry.run_scope(scope, ctx)
    _prefixed(rep, prefix, r.checks)
    skipped.extend("%s/%s" % (prefix, s) for s in sk)


def _both_full(W):
    right, left = fullness(W)
    return right and left


def _has_antipode(W):
    from .antipode import antipode
    try:
        antipode(W)
        return True
    except (ArithmeticError, ValueError):
        return False


def suite_axioms(W):
    rep = check_axioms(W)
    return SuiteResult("axioms", rep)


def suite_identities(W):
    rep, skipped = Report("identities"), []
    _scope(rep, skipped, "A", "wmb", W)
    _scope(rep, skipped, "A", "antipode", W)
    return SuiteResult("identities", rep, skipped)


def _comodules(W):
    from .comodule import regular_comodule, base_comodule
    out = [("A", regular_comodule(W))]
    if fullness(W)[0]:
        out.append(("R", base_comodule(W)))
    return out


def suite_comodules(W):
    from .comodule import check_right_comodule, is_full, bimodule_checks, counital_check, unit_of
    rep, skipped = Report("comodules"), []
    if not fullness(W)[0]:
        skipped.append("R (the comultiplication is not right full)")
    for name, C in _comodules(W):
        _prefixed(rep, name, check_right_comodule(C).checks)
        rep.add(Check("%s/full" % name, is_full(C)))
        if is_full(C):
            _guard(rep, skipped, "%s/bimodule" % name, lambda C=C: _prefixed(rep, name, bimodule_checks(C)))
        _scope(rep, skipped, name, "comodule", C)
        if unit_of(W.alg) is not None:
            counital, full = counital_check(C)
            rep.add(Check("%s/counital<=>full" % name, counital == full))
    return SuiteResult("comodules", rep, skipped)


def suite_monoidal(W):
    from .monoidal import product_checks, tensor_over_R, unitor_associator_checks, pentagon_check
    rep, skipped = Report("monoidal"), []
    if not fullness(W)[0]:
        skipped.append("all (the comultiplication is not right full)")
        return SuiteResult("monoidal", rep, skipped)
    comods = dict(_comodules(W))
    A, R = comods["A"], comods["R"]
    for a, b in (("A", "R"), ("R", "A"), ("A", "A"), ("R", "R")):
        V, U = comods[a], comods[b]
        prefix = "%s,%s" % (a, b)
        _scope(rep, skipped, prefix, "monoidal", (V, U))
        _guard(rep, skipped, prefix, lambda V=V, U=U, prefix=prefix:
               _prefixed(rep, prefix, product_checks(tensor_over_R(V, U))))
    _guard(rep, skipped, "A,R,A", lambda: _prefixed(rep, "A,R,A", unitor_associator_checks(A, R, A)))
    _guard(rep, skipped, "A,A,R,A", lambda: _prefixed(rep, "A,A,R,A", [pentagon_check(A, A, R, A)]))
    return SuiteResult("monoidal", rep, skipped)


def suite_integrals(W):
    from .integrals import integral_basis
    rep, skipped = Report("integrals"), []
    _scope(rep, skipped, "A", "integrals", W)
    G = getattr(W, "groupoid", None)
    if G is not None:
        k = len(integral_basis(W))
        rep.add(Check("A/integral dimension", k == len(G.objects),
                      detail="" if k == len(G.objects) else "%d integrals, %d objects" % (k, len(G.objects))))
    return SuiteResult("integrals", rep, skipped)


def suite_duality(W):
    rep, skipped = Report("duality"), []
    if not (_both_full(W) and _has_antipode(W)):
        skipped.append("all (needs a left and right full comultiplication and an antipode)")
        return SuiteResult("duality", rep, skipped)
    for name, C in _comodules(W):
        _scope(rep, skipped, name, "duality", C)
    return SuiteResult("duality", rep, skipped)


def suite_hopf(W):
    from . import hopf as H
    rep, skipped = Report("hopf"), []
    if not (_both_full(W) and _has_antipode(W)):
        skipped.append("all (needs a left and right full comultiplication and an antipode)")
        return SuiteResult("hopf", rep, skipped)
    mods = [("A", H.regular_hopf_module(W)), ("L(x)A", H.induce(H.module_L(W)).hopf),
            ("0", H.zero_hopf_module(W))]
    for name, M in mods:
        _prefixed(rep, name, H.check_hopf(M).checks)
        _scope(rep, skipped, name, "hopf", M)
    L = base_L(W)
    Lc = H.coinvariants(mods[0][1])
    rep.add(Check("A/dim A^c == dim L", Lc.dim == L.dim, detail="%d vs %d" % (Lc.dim, L.dim)))
    return SuiteResult("hopf", rep, skipped)


RUNNERS = {
    "axioms": suite_axioms,
    "identities": suite_identities,
    "comodules": suite_comodules,
    "monoidal": suite_monoidal,
    "integrals": suite_integrals,
    "duality": suite_duality,
    "hopf": suite_hopf,
}


def run_suite(W, name):
    if name not in RUNNERS:
        raise KeyError("unknown suite %r" % name)
    if name != "axioms" and not check_axioms(W).ok:
        rep = Report(name)
        rep.add(Check("axioms", False, detail="the axioms fail; nothing else is checked"))
        return SuiteResult(name, rep)
    return RUNNERS[name](W)


def run_suites(W, names=SUITES):
    return [run_suite(W, n) for n in names]


def full_report(W, names=SUITES):
    results = run_suites(W, names)
    return {
        "schema": SCHEMA,
        "fixture": W.name,
        "field": W.field.name,
        "dim": W.n,
        "ok": all(r.ok for r in results),
        "suites": [r.as_dict() for r in results],
    }
