"""Expression environments binding the structure maps of a given object."""

from .algebra import tensor_alg
from .expr import Env, Typed


def _t(m, dom, cod):
    return Typed(m, dom.split() if dom else [], cod.split() if cod else [])


def wmb_env(W):
    """Names for A, its structure maps and the base algebras R and L.

    Maps needing fullness or an antipode are computed on first use.
    """
    from . import core, antipode as ap
    env = Env(W.field, {"A": W.n})
    env.labels["A"] = list(W.labels)
    env.W = W
    d = env.define
    d("mu", _t(W.mu, "A A", "A"))
    d("eps", _t(W.eps, "A", ""))
    for k in ("E1", "E2", "T1", "T2"):
        d(k, _t(getattr(W, k), "A A", "A A"))
    d("T3", lambda: _t(core.T3(W), "A A", "A A"))
    d("T4", lambda: _t(core.T4(W), "A A", "A A"))
    d("mu2", lambda: _t(tensor_alg(W.alg, W.alg).mult, "A A A A", "A A"))
    d("DL", lambda: _t(core.delta_maps(W)[0], "A A A", "A A"))
    d("DR", lambda: _t(core.delta_maps(W)[1], "A A A", "A A"))
    for nm, key in (("PiL", "piL"), ("PiR", "piR"), ("PibarL", "pibarL"), ("PibarR", "pibarR")):
        d(nm + "_l", lambda key=key: _t(core.pi_actions(W)[key][0], "A A", "A"))
        d(nm + "_r", lambda key=key: _t(core.pi_actions(W)[key][1], "A A", "A"))
    d("F1", lambda: _t(core.F_maps(W)[0], "A A", "A A"))
    d("F2", lambda: _t(core.F_maps(W)[1], "A A", "A A"))
    d("G1", lambda: _t(ap.G1(W), "A A", "A A"))
    d("G2", lambda: _t(ap.G2(W), "A A", "A A"))
    d("R1", lambda: _t(ap.weak_inverse(W, 1), "A A", "A A"))
    d("R2", lambda: _t(ap.weak_inverse(W, 2), "A A", "A A"))
    d("S_l", lambda: _t(ap.antipode(W).S_l, "A A", "A"))
    d("S_r", lambda: _t(ap.antipode(W).S_r, "A A", "A"))
    _base(env, W, "R", core.base_R)
    _base(env, W, "L", core.base_L)
    return env


class _LazyDim(dict):
    """Space dimensions where R and L are only computed when asked for."""

    def __init__(self, base, lazy):
        super().__init__(base)
        self._lazy = lazy

    def __missing__(self, key):
        if key in self._lazy:
            v = self._lazy.pop(key)()
            self[key] = v
            return v
        raise KeyError(key)

    def __contains__(self, key):
        return dict.__contains__(self, key) or key in self._lazy


def _base(env, W, side, getter):
    if not isinstance(env.spaces, _LazyDim):
        env.spaces = _LazyDim(env.spaces, {})
    env.spaces._lazy[side] = lambda: getter(W).dim
    low = side.lower()
    d = env.define
    d("to" + side, lambda: _t(getter(W).from_pi, "A", side))
    d("to" + side + "bar", lambda: _t(getter(W).from_pibar, "A", side))
    d("mu" + side, lambda: _t(getter(W).mult, side + " " + side, side))
    d("d" + side, lambda: _t(getter(W).delta, side, side + " " + side))
    d("eps" + side, lambda: _t(getter(W).counit, side, ""))
    d("theta" + side, lambda: _t(getter(W).nakayama, side, side))
    d(low + "A", lambda: _t(getter(W).act_left(), side + " A", "A"))
    d("A" + low, lambda: _t(getter(W).act_right(), "A " + side, "A"))
