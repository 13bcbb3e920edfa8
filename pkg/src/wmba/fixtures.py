"""Finite groupoids and the weak multiplier bialgebras of their algebras."""

from dataclasses import dataclass, field as dc_field

from .algebra import FiniteAlgebra
from .core import Wmb
from .field import QQ
from .linalg import LinMap


class InvalidGroupoid(ValueError):
    pass


@dataclass
class GroupoidSpec:
    """Objects, morphisms (name -> (source, target)), composition and inverses.

    ``comp[(g, h)]`` is g∘h, defined when source(g) == target(h).  The
    identity of object x is the morphism ``ids[x]``.
    """
    objects: list
    morphisms: dict
    comp: dict
    inv: dict
    ids: dict = dc_field(default_factory=dict)

    def source(self, g):
        return self.morphisms[g][0]

    def target(self, g):
        return self.morphisms[g][1]

    def names(self):
        return list(self.morphisms)

    def validate(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise InvalidGroupoid("duplicate object")
        for g, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise InvalidGroupoid("morphism %s has unknown endpoints" % g)
        for x in self.objects:
            e = self.ids.get(x)
            if e not in self.morphisms or self.morphisms[e] != (x, x):
                raise InvalidGroupoid("object %s lacks an identity" % x)
        for g in self.morphisms:
            for h in self.morphisms:
                if self.source(g) == self.target(h):
                    k = self.comp.get((g, h))
                    if k is None:
                        raise InvalidGroupoid("composite %s∘%s missing" % (g, h))
                    if self.morphisms.get(k) != (self.source(h), self.target(g)):
                        raise InvalidGroupoid("composite %s∘%s has wrong endpoints" % (g, h))
                elif (g, h) in self.comp:
                    raise InvalidGroupoid("%s∘%s given but not composable" % (g, h))
        for g in self.morphisms:
            if self.comp[(g, self.ids[self.source(g)])] != g or self.comp[(self.ids[self.target(g)], g)] != g:
                raise InvalidGroupoid("identity law fails at %s" % g)
        for (g, h), gh in self.comp.items():
            for k in self.morphisms:
                if self.source(h) == self.target(k):
                    if self.comp[(gh, k)] != self.comp[(g, self.comp[(h, k)])]:
                        raise InvalidGroupoid("associativity fails at (%s, %s, %s)" % (g, h, k))
        for g in self.morphisms:
            gi = self.inv.get(g)
            if gi not in self.morphisms:
                raise InvalidGroupoid("no inverse for %s" % g)
            if self.comp.get((gi, g)) != self.ids[self.source(g)] or self.comp.get((g, gi)) != self.ids[self.target(g)]:
                raise InvalidGroupoid("%s is not inverse to %s" % (gi, g))
        return self


def connected_groupoid(objects, group, op, inverse, name=None):
    """The groupoid objects x objects x group with (z,g,y)∘(y,h,x) = (z,gh,x).

    ``group`` lists the elements (first one the unit), ``op`` multiplies
    them, ``name(y, g, x)`` labels the morphism x -> y.
    """
    unit = group[0]
    if name is None:
        def name(y, g, x):
            if y == x and g == unit:
                return "1_%s" % x
            return "%s_%s%s" % (g, y, x) if len(group) > 1 else "%s%s" % (y, x)
    morphisms, comp, inv, ids = {}, {}, {}, {}
    for x in objects:
        for y in objects:
            for g in group:
                morphisms[name(y, g, x)] = (x, y)
    for x in objects:
        ids[x] = name(x, unit, x)
        for y in objects:
            for g in group:
                inv[name(y, g, x)] = name(x, inverse(g), y)
                for z in objects:
                    for h in group:
                        comp[(name(z, h, y), name(y, g, x))] = name(z, op(h, g), x)
    return GroupoidSpec(list(objects), morphisms, comp, inv, ids)


def disjoint_union(*gs):
    out = GroupoidSpec([], {}, {}, {}, {})
    for g in gs:
        for part in ("morphisms", "comp", "inv", "ids"):
            getattr(out, part).update(getattr(g, part))
        out.objects.extend(g.objects)
    return out


def interval_groupoid():
    """Two objects x, y and one isomorphism f: x -> y."""
    return GroupoidSpec(
        objects=["x", "y"],
        morphisms={"1_x": ("x", "x"), "1_y": ("y", "y"), "f": ("x", "y"), "f'": ("y", "x")},
        comp={("1_x", "1_x"): "1_x", ("1_y", "1_y"): "1_y", ("f", "1_x"): "f", ("1_y", "f"): "f",
              ("f'", "1_y"): "f'", ("1_x", "f'"): "f'", ("f'", "f"): "1_x", ("f", "f'"): "1_y"},
        inv={"1_x": "1_x", "1_y": "1_y", "f": "f'", "f'": "f"},
        ids={"x": "1_x", "y": "1_y"},
    ).validate()


def cyclic_group(m, obj="*"):
    """Z/m as a one-object groupoid; elements are named g0 .. g(m-1)."""
    return connected_groupoid(
        [obj], list(range(m)), lambda a, b: (a + b) % m, lambda a: (-a) % m,
        name=lambda y, g, x: "1" if g == 0 else "g%d" % g,
    ).validate()


def z2_isotropy_groupoid():
    """Objects x, y, z: x and y connected with isotropy Z/2, z isolated (dim 9)."""
    xy = connected_groupoid(
        ["x", "y"], [0, 1], lambda a, b: (a + b) % 2, lambda a: a,
        name=lambda y, g, x: ("1_%s" % x if x == y else "%s%s" % (y, x)) if g == 0 else ("s%s%s" % (y, x)),
    )
    z = connected_groupoid(["z"], [0], lambda a, b: 0, lambda a: 0, name=lambda y, g, x: "1_z")
    return disjoint_union(xy, z).validate()


def groupoid_wmb(G, field=QQ, name="groupoid"):
    """The weak multiplier bialgebra kG with T3, T4 and S(g) = g⁻¹."""
    G.validate()
    mors = G.names()
    n = len(mors)
    idx = {g: i for i, g in enumerate(mors)}
    one = field.one

    def mul(i, j):
        g, h = mors[i], mors[j]
        k = G.comp.get((g, h))
        return None if k is None else idx[k]

    table = {}
    for i in range(n):
        for j in range(n):
            k = mul(i, j)
            if k is not None:
                table[(i, j)] = {k: one}
    A = FiniteAlgebra.from_table(n, table, mors, field)

    def pairmap(fn):
        cols = []
        for i in range(n):
            for j in range(n):
                r = fn(i, j)
                cols.append({} if r is None else {r[0] * n + r[1]: one})
        return LinMap(n * n, n * n, cols, field)


    T1 = pairmap(lambda i, j: (i, mul(i, j)) if mul(i, j) is not None else None)
    T2 = pairmap(lambda i, j: (mul(i, j), j) if mul(i, j) is not None else None)
    T3 = pairmap(lambda i, j: (i, mul(j, i)) if mul(j, i) is not None else None)
    T4 = pairmap(lambda i, j: (mul(j, i), j) if mul(j, i) is not None else None)
    E1 = pairmap(lambda i, j: (i, j) if G.target(mors[i]) == G.target(mors[j]) else None)
    E2 = pairmap(lambda i, j: (i, j) if G.source(mors[i]) == G.source(mors[j]) else None)
    eps = LinMap(n, 1, [{0: one} for _ in range(n)], field)
    S = LinMap(n, n, [{idx[G.inv[g]]: one} for g in mors], field)
    W = Wmb(A, E1, E2, T1, T2, eps, T3, T4, name=name)
    W.groupoid = G
    W.S_expected = S
    return W


FIXTURES = {
    "interval": (interval_groupoid, "interval groupoid (2 objects, 4 morphisms)"),
    "z2": (lambda: cyclic_group(2), "group bialgebra kZ/2"),
    "z2iso": (z2_isotropy_groupoid, "3 objects, one Z/2-isotropy component (dim 9)"),
    "z3": (lambda: cyclic_group(3), "group bialgebra kZ/3"),
}


def fixture(name, field=QQ):
    return groupoid_wmb(FIXTURES[name][0](), field, name)
