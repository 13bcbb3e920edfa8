"""Check results with witnesses, shared by every verification routine."""

from dataclasses import dataclass, field as dc_field

from .linalg import decode


@dataclass
class Check:
    name: str
    ok: bool
    witness: tuple = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def as_dict(self):
        d = {"name": self.name, "ok": self.ok}
        if self.witness is not None:
            d["witness"] = [str(w) for w in self.witness]
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    suite: str
    checks: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, checks):
        for c in checks:
            self.add(c)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def as_dict(self):
        return {"suite": self.suite, "ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def compare(name, lhs, rhs, labels=None):
    """Exact map equality; on failure the witness names the input basis tuple.

    ``labels`` is a list of per-factor label lists for the common domain.
    """
    if lhs.shape != rhs.shape:
        return Check(name, False, detail="shape %s vs %s" % (lhs.shape, rhs.shape))
    w = lhs.witness(rhs)
    if w is None:
        return Check(name, True)
    return Check(name, False, witness_tuple(w[1], labels), "differs in output coordinate %d" % w[0])


def witness_tuple(index, labels):
    if not labels:
        return (index,)
    idx = decode(index, [len(l) for l in labels])
    return tuple(l[i] for l, i in zip(labels, idx))
