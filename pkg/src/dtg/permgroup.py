"""Permutation groups with a Schreier-Sims stabilizer chain.

The chain is built deterministically (generators are sifted one by one and
every Schreier generator is processed), with base points chosen as the
smallest moved points unless a base hint is supplied.  Transversals are
stored as Schreier vectors; coset representatives are rebuilt on demand so
large-degree actions stay cheap on memory.

A PermGroup is immutable for callers once constructed; the chain is built
lazily on first use and extended in place only by internal bookkeeping.
"""

from __future__ import annotations

from .perm import Perm


class _Level:
    """One level of the chain: base point, generators, Schreier vector."""

    __slots__ = ("base", "gens", "gen_invs", "tree", "orbit", "done")

    def __init__(self, base):
        self.base = base
        self.gens = []
        self.gen_invs = []
        self.tree = {base: None}  # point -> (prev point, gen index)
        self.orbit = [base]
        self.done = {}  # point -> number of gens already paired with it

    def rep(self, point, identity):
        """Coset representative u with base^u = point."""
        path = []
        p = point
        while True:
            edge = self.tree[p]
            if edge is None:
                break
            prev, gi = edge
            path.append(gi)
            p = prev
        u = identity
        for gi in reversed(path):
            u = u * self.gens[gi]
        return u

    def strip_point(self, g, point):
        """Multiply g by rep(point)^-1 on the right, following the tree."""
        # g * u^-1 where u = s_{i1} ... s_{ik} along the tree path
        path = []
        p = point
        while True:
            edge = self.tree[p]
            if edge is None:
                break
            prev, gi = edge
            path.append(gi)
            p = prev
        for gi in path:
            g = g * self.gen_invs[gi]
        return g


class StabilizerChain:
    """Deterministic Schreier-Sims chain for a generator list."""

    def __init__(self, degree, gens, base_hint=None):
        self.degree = degree
        self.identity = Perm.identity(degree)
        self.levels = []
        self._base_hint = list(base_hint or [])
        self._dirty = set()
        for g in gens:
            self.extend(g)

    # -- construction ---------------------------------------------------

    def _pick_base(self, g):
        # hint points are honored in order even when the triggering
        # generator fixes them; a trivial-orbit level just forwards its
        # generators one level down
        used = {lv.base for lv in self.levels}
        for b in self._base_hint:
            if b not in used:
                return b
        return g.min_moved()

    def extend(self, g):
        """Add one group generator and restore the chain invariants."""
        residue, level = self.sift(g)
        if not residue.is_identity():
            self._add_generator(level, residue)
            self._process_dirty()

    def _add_generator(self, j, g):
        # a strong generator stuck at level j fixes the first j base
        # points, so it belongs to the generating set of levels 0..j
        if j == len(self.levels):
            self.levels.append(_Level(self._pick_base(g)))
        inv = g.inverse()
        for i in range(j + 1):
            self.levels[i].gens.append(g)
            self.levels[i].gen_invs.append(inv)
            self._dirty.add(i)

    def _process_dirty(self):
        while self._dirty:
            i = min(self._dirty)
            self._dirty.discard(i)
            self._close_orbit(i)

    def _close_orbit(self, i):
        """Process unseen (orbit point, generator) pairs at level i."""
        level = self.levels[i]
        progressed = True
        while progressed:
            progressed = False
            idx = 0
            while idx < len(level.orbit):
                p = level.orbit[idx]
                idx += 1
                start = level.done.get(p, 0)
                ngens = len(level.gens)
                if start >= ngens:
                    continue
                progressed = True
                u_p = level.rep(p, self.identity)
                for gi in range(start, ngens):
                    s = level.gens[gi]
                    q = s[p]
                    if q not in level.tree:
                        level.tree[q] = (p, gi)
                        level.orbit.append(q)
                    else:
                        schreier = level.strip_point(u_p * s, q)
                        if not schreier.is_identity():
                            residue, j = self.sift(schreier, start=i + 1)
                            if not residue.is_identity():
                                self._add_generator(j, residue)
                level.done[p] = max(level.done.get(p, 0), ngens)

    # -- queries ---------------------------------------------------------

    def sift(self, g, start=0):
        """Strip g through the chain; returns (residue, stuck level)."""
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            q = g[level.base]
            if q == level.base:
                continue
            if q not in level.tree:
                return g, i
            g = level.strip_point(g, q)
        return g, len(self.levels)

    def order(self):
        n = 1
        for level in self.levels:
            n *= len(level.orbit)
        return n

    def base(self):
        return [lv.base for lv in self.levels]

    def contains(self, g):
        residue, _ = self.sift(g)
        return residue.is_identity()

    def transversal_rep(self, level_index, point):
        level = self.levels[level_index]
        if point not in level.tree:
            raise KeyError(point)
        return level.rep(point, self.identity)

    def stabilizer_gens(self, depth):
        """Strong generators fixing the first `depth` base points."""
        gens = []
        for level in self.levels[depth:]:
            gens.extend(level.gens)
        return gens


class PermGroup:
    """Group generated by permutations of fixed degree."""

    def __init__(self, degree, generators):
        self.degree = degree
        self.generators = [g for g in generators if not g.is_identity()]
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree %d != %d" % (g.degree, degree))
        self._chain = None
        self._chain_hint = None

    @staticmethod
    def trivial(degree):
        return PermGroup(degree, [])

    @staticmethod
    def symmetric(n):
        gens = [Perm.from_cycles(n, [(0, 1)]), Perm.from_cycles(n, [tuple(range(n))])]
        return PermGroup(n, gens if n > 2 else gens[:1])

    @staticmethod
    def alternating(n):
        if n <= 2:
            return PermGroup.trivial(n)
        c3 = Perm.from_cycles(n, [(0, 1, 2)])
        if n % 2:
            big = Perm.from_cycles(n, [tuple(range(n))])
        else:
            big = Perm.from_cycles(n, [tuple(range(1, n))])
        return PermGroup(n, [c3, big])

    @staticmethod
    def cyclic(n):
        return PermGroup(n, [Perm.from_cycles(n, [tuple(range(n))])])

    def chain(self, base_hint=None):
        hint = tuple(base_hint or ())
        if self._chain is None or (hint and self._chain_hint[: len(hint)] != hint):
            self._chain = StabilizerChain(self.degree, self.generators, base_hint=hint)
            self._chain_hint = tuple(self._chain.base())
        return self._chain

    def order(self):
        if not self.generators:
            return 1
        return self.chain().order()

    def contains(self, g):
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        if g.is_identity():
            return True
        if not self.generators:
            return False
        return self.chain().contains(g)

    def is_subgroup(self, other):
        """True iff self <= other."""
        return all(other.contains(g) for g in self.generators)

    def orbit(self, point):
        """Smallest generator-closed set containing point."""
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in self.generators:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def orbits(self):
        seen = set()
        out = []
        for p in range(self.degree):
            if p in seen:
                continue
            orb = self.orbit(p)
            seen |= orb
            out.append(sorted(orb))
        return out

    def is_transitive(self):
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def stabilizer(self, point):
        """Pointwise stabilizer of `point` as a PermGroup."""
        chain = self.chain(base_hint=[point])
        if not chain.levels or chain.levels[0].base != point:
            # point fixed by the whole group
            return PermGroup(self.degree, list(self.generators))
        return PermGroup(self.degree, chain.stabilizer_gens(1))

    def transversal(self, point):
        """dict q -> rep with point^rep = q, over the orbit of point."""
        chain = self.chain(base_hint=[point])
        if not chain.levels or chain.levels[0].base != point:
            return {point: Perm.identity(self.degree)}
        level = chain.levels[0]
        return {q: level.rep(q, chain.identity) for q in level.orbit}

    def random_element(self, rng, word_length=20):
        if not self.generators:
            return Perm.identity(self.degree)
        g = Perm.identity(self.degree)
        for _ in range(word_length):
            s = rng.choice(self.generators)
            if rng.random() < 0.5:
                s = s.inverse()
            g = g * s
        return g

    def elements(self, limit=None):
        """Explicit closure; oracle-grade, only for small groups."""
        els = {Perm.identity(self.degree)}
        frontier = list(els)
        while frontier:
            new = []
            for a in frontier:
                for s in self.generators:
                    b = a * s
                    if b not in els:
                        els.add(b)
                        new.append(b)
                        if limit is not None and len(els) > limit:
                            raise RuntimeError("closure exceeds limit %d" % limit)
            frontier = new
        return els

    def normalized_by(self, other):
        """True iff `other`'s generators normalize this group."""
        for h in other.generators:
            for g in self.generators:
                if not self.contains(g.conjugate(h)):
                    return False
        return True

    def __repr__(self):
        return "PermGroup(degree=%d, gens=%d)" % (self.degree, len(self.generators))


class ActionTable:
    """A finite action: generator images on {0..m-1} plus point labels."""

    def __init__(self, degree, gen_images, labels=None):
        self.degree = degree
        self.gen_images = list(gen_images)
        self.labels = labels
        self.group = PermGroup(degree, self.gen_images)

    def __repr__(self):
        return "ActionTable(degree=%d, gens=%d)" % (self.degree, len(self.gen_images))


def coset_action(group, subgroup, max_index=100_000):
    """Right-multiplication action of `group` on right cosets of `subgroup`.

    Coset identification uses the subgroup's orbit partition as a cheap
    invariant, with a membership sift inside each bucket.
    """
    if subgroup.degree != group.degree:
        raise ValueError("degree mismatch")
    if not subgroup.is_subgroup(group):
        raise ValueError("not a subgroup")
    index, remainder = divmod(group.order(), subgroup.order())
    if remainder:
        raise ValueError("subgroup order does not divide group order")
    if index > max_index:
        raise ValueError("index too large: %d > %d" % (index, max_index))

    n = group.degree
    orbit_id = [0] * n
    for i, orb in enumerate(subgroup.orbits()):
        for p in orb:
            orbit_id[p] = i

    def signature(rep_inv):
        return tuple(orbit_id[rep_inv[q]] for q in range(n))

    def locate(x, buckets, reps, rep_invs):
        """Index of coset (subgroup)*x, or None."""
        xi = x.inverse()
        for j in buckets.get(signature(xi), ()):
            if subgroup.contains(x * rep_invs[j]):
                return j
        return None

    identity = Perm.identity(n)
    reps = [identity]
    rep_invs = [identity]
    buckets = {signature(identity): [0]}
    images = [[] for _ in group.generators]
    pos = 0
    while pos < len(reps):
        r = reps[pos]
        for gi, g in enumerate(group.generators):
            x = r * g
            j = locate(x, buckets, reps, rep_invs)
            if j is None:
                j = len(reps)
                reps.append(x)
                rep_invs.append(x.inverse())
                buckets.setdefault(signature(rep_invs[j]), []).append(j)
            images[gi].append(j)
        pos += 1
    if len(reps) != index:
        raise RuntimeError("coset enumeration found %d cosets, expected %d" % (len(reps), index))
    gen_images = [Perm(img) for img in images]
    return ActionTable(index, gen_images, labels=reps)


class Suborbit:
    """A point-stabilizer orbit with its pairing information."""

    __slots__ = ("rep", "points", "paired_with", "index")

    def __init__(self, rep, points):
        self.rep = rep
        self.points = points
        self.paired_with = None
        self.index = None

    @property
    def size(self):
        return len(self.points)

    @property
    def self_paired(self):
        return self.paired_with == self.index

    def __repr__(self):
        return "Suborbit(rep=%d, size=%d, paired_with=%s)" % (
            self.rep,
            len(self.points),
            self.paired_with,
        )


def orbitals(action, base_point=0):
    """Suborbits of a transitive action, with pairing flags.

    Returns a list of Suborbit, the trivial one first, then by
    (size, min point).  The number of entries is the rank.
    """
    group = action.group if isinstance(action, ActionTable) else action
    if not group.is_transitive():
        raise ValueError("intransitive")
    stab = group.stabilizer(base_point)
    suborbits = []
    for orb in stab.orbits():
        suborbits.append(Suborbit(min(orb), frozenset(orb)))
    suborbits.sort(key=lambda s: (s.rep != base_point, s.size, s.rep))
    for i, s in enumerate(suborbits):
        s.index = i
    # pairing: with u_r mapping base -> r, base^(u_r^-1) lands in the paired suborbit
    transversal = group.transversal(base_point)
    lookup = {}
    for s in suborbits:
        for p in s.points:
            lookup[p] = s.index
    for s in suborbits:
        back = transversal[s.rep].inverse()[base_point]
        s.paired_with = lookup[back]
    return suborbits


def rank_and_subdegrees(action, base_point=0):
    subs = orbitals(action, base_point)
    return len(subs), sorted(s.size for s in subs)


def minimal_block_system(group, base, other):
    """Finest G-invariant partition with base and other in one block.

    Standard union-find closure; returns the partition as a list of
    sorted blocks, or None when it degenerates to a single block.
    """
    n = group.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[ry] = rx
        return True

    union(base, other)
    queue = [(base, other)]
    while queue:
        u, v = queue.pop()
        for g in group.generators:
            a, b = g[u], g[v]
            if union(a, b):
                queue.append((a, b))
    blocks = {}
    for p in range(n):
        blocks.setdefault(find(p), []).append(p)
    if len(blocks) <= 1:
        return None
    return sorted(sorted(b) for b in blocks.values())


def block_systems(group):
    """All minimal nontrivial block systems of a transitive group.

    Empty list iff the action is primitive.
    """
    if not group.is_transitive():
        raise ValueError("intransitive")
    n = group.degree
    seen = set()
    systems = []
    for p in range(1, n):
        system = minimal_block_system(group, 0, p)
        if system is None:
            continue
        if len(system) >= n:
            continue  # all singletons cannot happen here, guard anyway
        key = tuple(tuple(b) for b in system)
        if key not in seen:
            seen.add(key)
            systems.append(system)

    def refines(fine, coarse):
        lookup = {}
        for i, block in enumerate(coarse):
            for v in block:
                lookup[v] = i
        return all(len({lookup[v] for v in block}) == 1 for block in fine)

    minimal = [
        s
        for s in systems
        if not any(t is not s and refines(t, s) for t in systems)
    ]
    return minimal


def is_primitive(group):
    return not block_systems(group)
