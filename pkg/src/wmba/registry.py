"""The named-identity registry.

Identities live in ``data/identities.txt``, one per line::

    name | scope | hypotheses | statement

A statement is ``lhs == rhs`` in the expression language of
:mod:`wmba.expr`, ``span f == full`` (the image of f is its whole
codomain), or ``@name`` for a check written in Python.  Several
statements may be joined with `` ; ``; an entry holds when all of them do.

Scopes and their contexts:

==========  =====================================================
wmb         a Wmb
antipode    a Wmb with an antipode
comodule    a RightComodule
monoidal    a pair (V, W) of full right comodules
integrals   a Wmb (checks quantify over a basis of the dual space)
duality     a full RightComodule over a Wmb with antipode
hopf        a HopfModule
==========  =====================================================
"""

import importlib
from dataclasses import dataclass
from importlib import resources

from .expr import ParseError, tokenize, evaluate, compare_exprs, space_labels
from .report import Check, Report

SCOPES = ("wmb", "antipode", "comodule", "monoidal", "integrals", "duality", "hopf")
HYPOTHESES = ("regular", "right_full", "left_full", "antipode", "full")


class UnknownIdentity(KeyError):
    pass


class HypothesisNotMet(ValueError):
    pass


@dataclass(frozen=True)
class Entry:
    name: str
    scope: str
    hypotheses: tuple
    statements: tuple      # ("eq", lhs, rhs) | ("span", expr) | ("py", name)
    line: int = 0


# parsing -------------------------------------------------------------------------------

def _statement(text, line, column):
    text = text.strip()
    if text.startswith("@"):
        name = text[1:].strip()
        if not name.isidentifier():
            raise ParseError("bad python check name %r" % name, line, column)
        return ("py", name)
    if "==" not in text:
        raise ParseError("statement needs '=='", line, column)
    lhs, _, rhs = text.partition("==")
    lhs, rhs = lhs.strip(), rhs.strip()
    if not lhs or not rhs:
        raise ParseError("empty side in statement", line, column)
    for side, off in ((lhs, 0), (rhs, text.index("==") + 2)):
        try:
            tokenize(side)
        except ParseError as e:
            raise ParseError(str(e), line, column + off + (e.column or 0)) from None
    if lhs.startswith("span "):
        if rhs != "full":
            raise ParseError("span statements compare with 'full'", line, column)
        return ("span", lhs[5:].strip())
    return ("eq", lhs, rhs)


def parse_registry(text):
    """Parse registry text into an ordered dict name -> Entry."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0] if raw.lstrip().startswith("#") else raw
        if not body.strip():
            continue
        parts = body.split("|")
        if len(parts) != 4:
            raise ParseError("expected 4 '|'-separated fields, got %d" % len(parts), lineno, 1)
        name, scope, hyps, stmt = (p.strip() for p in parts)
        col = len(parts[0]) + len(parts[1]) + len(parts[2]) + 4
        if not name:
            raise ParseError("missing name", lineno, 1)
        if name in out:
            raise ParseError("duplicate entry %r" % name, lineno, 1)
        if scope not in SCOPES:
            raise ParseError("unknown scope %r" % scope, lineno, len(parts[0]) + 2)
        hyp = () if hyps in ("", "-") else tuple(h.strip() for h in hyps.split(","))
        for h in hyp:
            if h not in HYPOTHESES:
                raise ParseError("unknown hypothesis %r" % h, lineno, len(parts[0]) + len(parts[1]) + 3)
        stmts = []
        offset = col
        for piece in stmt.split(" ; "):
            stmts.append(_statement(piece, lineno, offset))
            offset += len(piece) + 3
        out[name] = Entry(name, scope, hyp, tuple(stmts), lineno)
    return out


_REGISTRY = None


def load_registry():
    global _REGISTRY
    if _REGISTRY is None:
        text = resources.files("wmba").joinpath("data/identities.txt").read_text(encoding="utf-8")
        _REGISTRY = parse_registry(text)
    return _REGISTRY


def entries(scope=None):
    return [e for e in load_registry().values() if scope is None or e.scope == scope]


def get_entry(name):
    try:
        return load_registry()[name]
    except KeyError:
        raise UnknownIdentity(name) from None


# contexts ------------------------------------------------------------------------------

def _wmb_of(scope, ctx):
    if scope == "monoidal":
        return ctx[0].W
    if scope in ("comodule", "duality", "hopf"):
        return ctx.W
    return ctx


def _env(scope, ctx):
    if scope in ("wmb", "antipode", "integrals"):
        from .envs import wmb_env
        return ctx.cached("env", lambda: wmb_env(ctx))
    if scope == "comodule":
        from .comodule import comodule_env
        return comodule_env(ctx)
    if scope == "duality":
        from .duality import duality_env
        return duality_env(ctx)
    if scope == "monoidal":
        from .monoidal import monoidal_env
        V, W = ctx
        return V.cached(("menv", id(W)), lambda: monoidal_env(V, W))
    if scope == "hopf":
        from .hopf import hopf_env
        return hopf_env(ctx)
    raise UnknownIdentity(scope)


def hypotheses_met(entry, ctx):
    """The list of unmet hypotheses of ``entry`` in ``ctx``."""
    from . import core
    W = _wmb_of(entry.scope, ctx)
    missing = []
    for h in entry.hypotheses:
        if h == "regular":
            ok = _safe(lambda: core.regular(W))
        elif h == "right_full":
            ok = _safe(lambda: core.fullness(W)[0])
        elif h == "left_full":
            ok = _safe(lambda: core.fullness(W)[1])
        elif h == "antipode":
            from .antipode import antipode
            ok = _safe(lambda: antipode(W) is not None)
        else:
            from .comodule import is_full
            comods = ctx if entry.scope == "monoidal" else (getattr(ctx, "comodule", ctx),)
            ok = all(_safe(lambda c=c: is_full(c)) for c in comods)
        if not ok:
            missing.append(h)
    return missing


def _safe(fn):
    try:
        return bool(fn())
    except (ArithmeticError, ValueError):
        return False


# evaluation ----------------------------------------------------------------------------

_PY = {
    "E_coproduct": "wmba.registry:_e_coproduct",
    "S_nd": "wmba.registry:_s_nd",
    "mono_epi": "wmba.registry:_mono_epi",
    "harpoon": "wmba.integrals:harpoon_check",
    "int_def": "wmba.integrals:int_def_check",
    "int_roundtrip": "wmba.integrals:roundtrip_check",
    "dual_left": "wmba.duality:dual_left_check",
    "dual_right": "wmba.duality:dual_right_check",
    "dual_actions": "wmba.duality:dual_actions_check",
    "ev_coev": "wmba.duality:ev_coev_check",
    "snake": "wmba.duality:snake_check",
    "kappa": "wmba.duality:kappa_check",
    "omega_surjective": "wmba.hopf:omega_surjective_check",
    "zeta": "wmba.hopf:zeta_check",
    "fund_thm": "wmba.hopf:fundamental_check",
}


def _py(name):
    try:
        mod, fn = _PY[name].split(":")
    except KeyError:
        raise UnknownIdentity("@" + name) from None
    return getattr(importlib.import_module(mod), fn)


def _span_full(env, name, text):
    f = evaluate(text, env)
    m = f.map
    r = m.rank()
    return Check(name, r == m.cod, detail="" if r == m.cod else "image has dimension %d < %d" % (r, m.cod))


def _run(entry, ctx):
    env = None
    for k, st in enumerate(entry.statements, 1):
        label = entry.name if len(entry.statements) == 1 else "%s[%d]" % (entry.name, k)
        if st[0] == "py":
            c = _py(st[1])(ctx)
        else:
            env = env or _env(entry.scope, ctx)
            if st[0] == "span":
                c = _span_full(env, label, st[1])
            else:
                c = compare_exprs(env, label, st[1], st[2])
        if not c.ok:
            return Check(entry.name, False, c.witness, ("%s: %s" % (label, c.detail)).rstrip(": "))
    return Check(entry.name, True)


def evaluate_entry(entry, ctx, check_hypotheses=True):
    """Evaluate one entry to a Check.  Errors inside the evaluation count as failures."""
    if check_hypotheses:
        missing = hypotheses_met(entry, ctx)
        if missing:
            raise HypothesisNotMet("%s needs %s" % (entry.name, ", ".join(missing)))
    try:
        return _run(entry, ctx)
    except (UnknownIdentity, ParseError):
        raise
    except (ArithmeticError, ValueError, KeyError) as e:
        return Check(entry.name, False, detail="%s: %s" % (type(e).__name__, e))


def identity_check(ctx, name, scope=None):
    entry = get_entry(name)
    if scope is not None and entry.scope not in scope:
        raise UnknownIdentity("%s is not a %s identity" % (name, "/".join(scope)))
    return evaluate_entry(entry, ctx)


def check_identity(W, name):
    return identity_check(W, name, ("wmb", "antipode")).ok


def check_identity_comod(C, name):
    return identity_check(C, name, ("comodule",)).ok


def check_identity_monoidal(ctx, name):
    return identity_check(tuple(ctx), name, ("monoidal",)).ok


def check_identity_int(W, name):
    return identity_check(W, name, ("integrals",)).ok


def check_identity_dual(C, name):
    return identity_check(C, name, ("duality",)).ok


def check_identity_hopf(H, name):
    return identity_check(H, name, ("hopf",)).ok


def run_scope(scope, ctx, suite=None):
    """Every entry of ``scope`` whose hypotheses hold; returns (Report, skipped names)."""
    rep = Report(suite or scope)
    skipped = []
    for e in entries(scope):
        if hypotheses_met(e, ctx):
            skipped.append(e.name)
            continue
        rep.add(evaluate_entry(e, ctx, check_hypotheses=False))
    return rep, skipped


# python checks -------------------------------------------------------------------------

def _e_coproduct(W, solve=None):
    """(A⊗Δ)(E) == (E⊗1)(1⊗E) as multipliers on A⊗A⊗A.

    The extension of A⊗Δ to multipliers is unique once the span condition
    holds, so for larger algebras the candidate (E⊗1)(1⊗E) is checked
    against the defining equations instead of solving for the extension.
    """
    from .algebra import tensor_alg, make_multiplier, extend_map
    from .core import delta_maps
    from .linalg import compose, tensor, identity, span_basis
    from .report import compare
    I, n = W.I, W.n
    DL, DR = delta_maps(W)
    phi_left = compose(tensor(W.mu, DL), W.perm([0, 2, 1, 3, 4]))
    phi_right = compose(tensor(W.mu, DR), W.perm([0, 3, 1, 2, 4]))
    want_l = compose(tensor(W.E1, I), tensor(I, W.E1))
    want_r = compose(tensor(I, W.E2), tensor(W.E2, I))
    lab = [W.labels] * 3
    if solve is None:
        solve = n <= 4
    if solve:
        AA = tensor_alg(W.alg, W.alg)
        AAA = tensor_alg(AA, W.alg)
        e = make_multiplier(AAA, tensor(I, W.E1), tensor(I, W.E2))
        m = extend_map(AA, AAA, phi_left, phi_right, e)(make_multiplier(AA, W.E1, W.E2))
        c = compare("E_coproduct", m.lam, want_l, lab)
        return c if not c.ok else compare("E_coproduct", m.rho, want_r, lab)
    F = W.field
    for a, b in ((DL, W.E1), (DR, W.E2)):
        if span_basis(a.cols, n * n, F) != span_basis(b.cols, n * n, F):
            return Check("E_coproduct", False, detail="span condition fails")
    lab5 = [W.labels] * 5
    Ib = identity(n ** 3, F)
    checks = [
        compare("E_coproduct", compose(want_l, phi_left), compose(phi_left, tensor(W.E1, Ib)), lab5),
        compare("E_coproduct", compose(want_r, phi_right), compose(phi_right, tensor(Ib, W.E2)), lab5),
        compare("E_coproduct", compose(want_l, tensor(I, W.E1)), want_l, lab),
        compare("E_coproduct", compose(want_r, tensor(I, W.E2)), want_r, lab),
    ]
    for c in checks:
        if not c.ok:
            return c
    return Check("E_coproduct", True)


def _s_nd(W):
    from .antipode import antipode, s_checks
    cs = {c.name: c for c in s_checks(W, antipode(W))}
    for k in ("S_nd.1", "S_nd.2"):
        if k in cs and not cs[k].ok:
            return Check("S_nd", False, detail=k)
    return Check("S_nd", True)


def _mono_epi(ctx):
    from .monoidal import tensor_over_R, mono_epi_check
    from .linalg import identity, LinMap
    V, W = ctx
    PC = tensor_over_R(V, W)
    P = PC.product
    d = P.dim
    F = V.field
    maps = [(identity(d, F), P), (PC.incl, PC.plain)]
    if d:
        cols = [dict() for _ in range(d)]
        cols[0] = {d - 1: F.one}
        maps.append((LinMap(d, d, cols, F), P))
    for f, tgt in maps:
        c = mono_epi_check(V, W, f, tgt)
        if not c.ok:
            return c
    return Check("mono-epi", True)


# fault injection -----------------------------------------------------------------------

WMB_TARGETS = ("E1", "E2", "T1", "T2", "T3", "T4", "eps")
COMODULE_TARGETS = ("lam", "rho")


@dataclass
class FaultRun:
    target: str
    position: tuple     # (output coordinate, input column) that was changed
    failure: Check      # the first failing entry, or None


def perturb(m, rng):
    """``m`` with one matrix entry increased by one."""
    from .linalg import LinMap
    i, j = rng.randrange(m.cod), rng.randrange(m.dom)
    cols = [dict(c) for c in m.cols]
    v = cols[j].get(i, m.field.zero) + m.field.one
    if v:
        cols[j][i] = v
    else:
        cols[j].pop(i, None)
    return LinMap(m.dom, m.cod, cols, m.field), (i, j)


def _first_failure(scopes, ctx):
    for scope in scopes:
        for e in entries(scope):
            c = evaluate_entry(e, ctx, check_hypotheses=False)
            if not c.ok and c.witness is not None:
                return c
    return None


def inject_wmb_fault(W, target, rng):
    from . import core
    base = {"T3": core.T3, "T4": core.T4}.get(target)
    m = base(W) if base else getattr(W, target)
    bad, pos = perturb(m, rng)
    return W.replace(**{target: bad}), pos


def fault_injection(W, rng, targets=WMB_TARGETS, scopes=("wmb", "antipode")):
    """One run per target: corrupt that structure map and find a failing entry."""
    runs = []
    for t in targets:
        bad, pos = inject_wmb_fault(W, t, rng)
        runs.append(FaultRun(t, pos, _first_failure(scopes, bad)))
    return runs


def comodule_fault_injection(C, rng, targets=COMODULE_TARGETS):
    runs = []
    for t in targets:
        m, pos = perturb(getattr(C, t), rng)
        runs.append(FaultRun(t, pos, _first_failure(("comodule",), C.replace(**{t: m}))))
    return runs
