"""Integral ideals supported on a finite table of prime labels."""

from itertools import product


class IdealIndex:
    """An ideal as an exponent vector over prime labels."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=None):
        d = {}
        items = exps.items() if isinstance(exps, dict) else (exps or ())
        for label, e in items:
            e = int(e)
            if e < 0:
                raise ValueError("negative exponent in an integral ideal")
            if e:
                d[label] = d.get(label, 0) + e
        self.exps = tuple(sorted(d.items()))
        self._hash = hash(self.exps)

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def prime(cls, label, e=1):
        return cls({label: e})

    @classmethod
    def from_support(cls, labels):
        return cls({v: 1 for v in labels})

    def as_dict(self):
        return dict(self.exps)

    @property
    def support(self):
        return frozenset(v for v, _ in self.exps)

    def exponent(self, label):
        for v, e in self.exps:
            if v == label:
                return e
        return 0

    def is_one(self):
        return not self.exps

    def __eq__(self, o):
        return isinstance(o, IdealIndex) and o.exps == self.exps

    def __hash__(self):
        return self._hash

    def __lt__(self, o):
        return self.exps < o.exps

    def __repr__(self):
        if not self.exps:
            return "(1)"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.exps)

    def __mul__(self, o):
        d = self.as_dict()
        for v, e in o.exps:
            d[v] = d.get(v, 0) + e
        return IdealIndex(d)

    def divides(self, o) -> bool:
        return all(o.exponent(v) >= e for v, e in self.exps)

    def __truediv__(self, o):
        if not o.divides(self):
            raise ValueError(f"{o} does not divide {self}")
        d = self.as_dict()
        for v, e in o.exps:
            d[v] -= e
        return IdealIndex(d)

    def gcd(self, o):
        return IdealIndex({v: min(e, o.exponent(v)) for v, e in self.exps})

    def lcm(self, o):
        d = self.as_dict()
        for v, e in o.exps:
            d[v] = max(d.get(v, 0), e)
        return IdealIndex(d)

    def coprime(self, o) -> bool:
        return not (self.support & o.support)

    def hall_divides(self, o) -> bool:
        """self || o: self divides o and is coprime to o/self."""
        return self.divides(o) and self.coprime(o / self)

    def restrict(self, labels):
        labels = set(labels)
        return IdealIndex({v: e for v, e in self.exps if v in labels})

    def remove(self, labels):
        labels = set(labels)
        return IdealIndex({v: e for v, e in self.exps if v not in labels})

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def mobius(self) -> int:
        if not self.is_squarefree():
            return 0
        return -1 if len(self.exps) % 2 else 1

    def divisors(self):
        labels = [v for v, _ in self.exps]
        ranges = [range(e + 1) for _, e in self.exps]
        for combo in product(*ranges):
            yield IdealIndex(dict(zip(labels, combo)))

    def hall_divisors(self):
        labels = [v for v, _ in self.exps]
        for mask in product((0, 1), repeat=len(labels)):
            yield self.restrict([v for v, b in zip(labels, mask) if b])

    def norm(self, norms) -> int:
        out = 1
        for v, e in self.exps:
            out *= norms[v] ** e
        return out

    def to_json(self):
        return {v: e for v, e in self.exps}

    @classmethod
    def from_json(cls, d):
        return cls({str(k): int(v) for k, v in d.items()})


def ideals_up_to(norms: dict, bound: int) -> list:
    """Every ideal over the labels of ``norms`` with norm at most ``bound``."""
    labels = sorted(norms)
    out = []

    def rec(i, cur, n):
        if i == len(labels):
            out.append(IdealIndex(cur))
            return
        v = labels[i]
        e = 0
        while n * norms[v] ** e <= bound:
            cur[v] = e
            rec(i + 1, cur, n * norms[v] ** e)
            e += 1
        cur.pop(v, None)

    if bound >= 1:
        rec(0, {}, 1)
    out.sort(key=lambda a: (a.norm(norms), a.exps))
    return out
