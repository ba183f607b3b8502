"""Permutations on {0..n-1} stored as image arrays.

Composition convention is left-to-right: points are acted on the right,
so (g * h) sends x to h[g[x]].  Cycle notation appears only at I/O
boundaries; everything internal works with the image tuple.
"""

from __future__ import annotations

import re


class Perm:
    """A bijection of {0..n-1}, immutable and hashable."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation of 0..n-1: %r" % (images,))
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self):
        return len(self.images)

    @staticmethod
    def identity(n):
        return Perm(range(n))

    @staticmethod
    def from_cycles(n, cycles):
        """Build a permutation of degree n from disjoint-cycle data."""
        images = list(range(n))
        seen = set()
        for cycle in cycles:
            for p in cycle:
                if p in seen:
                    raise ValueError("point %d repeated in cycles" % p)
                if not 0 <= p < n:
                    raise ValueError("point %d out of range" % p)
                seen.add(p)
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return Perm(images)

    def __call__(self, point):
        return self.images[point]

    def __getitem__(self, point):
        return self.images[point]

    def __mul__(self, other):
        # self first, then other
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        o = other.images
        return Perm(o[x] for x in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    __invert__ = inverse

    def __pow__(self, k):
        n = len(self.images)
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(n)
        g = self
        while k:
            if k & 1:
                result = result * g
            g = g * g
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self):
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def moved_points(self):
        return [i for i, j in enumerate(self.images) if i != j]

    def min_moved(self):
        """Smallest non-fixed point, or None for the identity."""
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def conjugate(self, h):
        """h^-1 * self * h."""
        return h.inverse() * self * h

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Perm(%s)" % format_cycles(self)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_cycles(perm):
    """Cycle-notation string, '()' for the identity."""
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def parse_perm(text, degree):
    """Parse cycle notation like '(0 1 2)(3 4)' or an image list 'img: 1 0 2'."""
    text = text.strip()
    if text.startswith("img:"):
        images = [int(tok) for tok in text[4:].split()]
        if len(images) != degree:
            raise ValueError("image list has length %d, expected %d" % (len(images), degree))
        return Perm(images)
    if text == "()":
        return Perm.identity(degree)
    cycles = []
    consumed = 0
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).replace(",", " ").split()
        cycles.append([int(tok) for tok in body])
        consumed += len(m.group(0))
    if consumed != len(re.sub(r"\s", "", text)) and not cycles:
        raise ValueError("cannot parse permutation: %r" % text)
    return Perm.from_cycles(degree, cycles)


def write_generators(path, degree, perms):
    """Write a generator file: 'degree n' then one permutation per line."""
    lines = ["degree %d" % degree]
    for p in perms:
        lines.append(format_cycles(p))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_generators(path):
    """Read a generator file; returns (degree, list of Perm)."""
    degree = None
    perms = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if degree is None:
                if not line.startswith("degree"):
                    raise ValueError("line %d: expected 'degree n'" % lineno)
                degree = int(line.split()[1])
                continue
            try:
                perms.append(parse_perm(line, degree))
            except ValueError as exc:
                raise ValueError("line %d: %s" % (lineno, exc)) from None
    if degree is None:
        raise ValueError("empty generator file")
    return degree, perms
