"""Permutation groups generated by monodromy: order by a deterministic
Schreier-Sims stabilizer chain, block systems by minimal-block union-find."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .braids import compose, inverse_perm
from .equation import TrinomialEquation
from .errors import DegreeMismatch


def _transversal(b: int, gens: list) -> dict:
    n = len(gens[0]) if gens else 0
    ident = tuple(range(max(n, b + 1)))[:n] if n else ()
    out = {b: ident}
    frontier = [b]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if y not in out:
                    out[y] = compose(out[x], g)
                    nxt.append(y)
        frontier = nxt
    return out


def _sift(h, base, trans, start):
    for l in range(start, len(base)):
        x = h[base[l]]
        if x not in trans[l]:
            return h, l
        h = compose(h, inverse_perm(trans[l][x]))
    return h, len(base)


@dataclass
class StabilizerChain:
    degree: int
    base: list
    strong: list
    transversals: list

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def contains(self, g) -> bool:
        h, j = _sift(tuple(g), self.base, self.transversals, 0)
        return j == len(self.base) and h == tuple(range(self.degree))


def stabilizer_chain(gens, degree: int) -> StabilizerChain:
    ident = tuple(range(degree))
    gens = [g for g in dict.fromkeys(tuple(g) for g in gens) if g != ident]

    def moved(g):
        return next(i for i in range(degree) if g[i] != i)

    base = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(moved(g))
    strong = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]
    trans = [_transversal(base[i], strong[i]) for i in range(len(base))]
    i = len(base) - 1
    while i >= 0:
        restart = False
        for x, u in list(trans[i].items()):
            for s in strong[i]:
                h = compose(u, s, inverse_perm(trans[i][s[x]]))
                if h == ident:
                    continue
                h, j = _sift(h, base, trans, i + 1)
                if h != ident:
                    if j == len(base):
                        base.append(moved(h))
                        strong.append([])
                        trans.append({})
                    for l in range(i + 1, j + 1):
                        strong[l].append(h)
                        trans[l] = _transversal(base[l], strong[l])
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1
    return StabilizerChain(degree, base, strong, trans)


def orbits(gens, degree: int) -> list:
    seen, out = set(), []
    for s in range(degree):
        if s in seen:
            continue
        orb, frontier = {s}, [s]
        while frontier:
            x = frontier.pop()
            for g in gens:
                if g[x] not in orb:
                    orb.add(g[x])
                    frontier.append(g[x])
        seen |= orb
        out.append(sorted(orb))
    return out


def minimal_block(gens, degree: int, a: int, b: int) -> tuple:
    """Finest block system in which a and b share a block (union-find closure)."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for g in gens:
            pending.append((g[x], g[y]))
    classes = {}
    for x in range(degree):
        classes.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(c) for c in classes.values()))


def block_systems(gens, degree: int) -> list:
    found = set()
    for b in range(1, degree):
        part = minimal_block(gens, degree, 0, b)
        if 1 < len(part) < degree:
            found.add(part)
    return sorted(found, key=lambda p: (-len(p), p))


def preserves(gens, partition) -> bool:
    where = {x: k for k, blk in enumerate(partition) for x in blk}
    for g in gens:
        for blk in partition:
            if len({where[g[x]] for x in blk}) != 1:
                return False
    return True


def block_action(gens, partition) -> list:
    where = {x: k for k, blk in enumerate(partition) for x in blk}
    return [tuple(where[g[blk[0]]] for blk in partition) for g in gens]


@dataclass
class PermGroupReport:
    degree: int
    generator_count: int
    order: int
    transitive: bool
    block_systems: list
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generator_count": self.generator_count,
            "order": str(self.order),
            "transitive": self.transitive,
            "block_systems": [[list(b) for b in part] for part in self.block_systems],
            "verdicts": dict(sorted(self.verdicts.items())),
            "notes": list(self.notes),
        }


def group_from_generators(perms) -> PermGroupReport:
    perms = [tuple(p) for p in perms]
    if not perms:
        raise DegreeMismatch("at least one generator is needed to fix the degree")
    d = len(perms[0])
    if any(len(p) != d for p in perms):
        raise DegreeMismatch("generators act on different degrees")
    order = stabilizer_chain(perms, d).order
    transitive = len(orbits(perms, d)) == 1
    blocks = block_systems(perms, d) if transitive else []
    verdicts = {"is_symmetric": order == math.factorial(d)}
    return PermGroupReport(d, len(perms), order, transitive, blocks, verdicts)


def sheet_partition(eq: TrinomialEquation) -> tuple:
    m = eq.m
    return tuple(tuple(range(t * m, t * m + m)) for t in range(eq.n))


def check_corollaries(eq: TrinomialEquation, generators) -> PermGroupReport:
    """Group data for the monodromy of the omega lassos and the loop about infinity."""
    generators = [tuple(g) for g in generators]
    if any(len(g) != eq.n_total for g in generators):
        raise DegreeMismatch(f"expected permutations of {eq.n_total} labels")
    rep = group_from_generators(generators)
    m, n = eq.m, eq.n
    if m == 1:
        rep.verdicts["respects_m_blocks"] = False
        rep.verdicts["blocks_act_as_full_symmetric"] = False
        rep.verdicts["expected"] = rep.verdicts["is_symmetric"]
        return rep
    part = sheet_partition(eq)
    respects = preserves(generators, part)
    rep.verdicts["respects_m_blocks"] = respects
    if respects:
        induced = block_action(generators, part)
        rep.verdicts["blocks_act_as_full_symmetric"] = stabilizer_chain(induced, n).order == math.factorial(n)
    else:
        rep.verdicts["blocks_act_as_full_symmetric"] = False
    small, wreath = m ** (n - 1) * math.factorial(n), m ** n * math.factorial(n)
    rep.verdicts["order_is_m^(n-1)n!"] = rep.order == small
    rep.verdicts["order_is_m^n n!"] = rep.order == wreath
    rep.verdicts["expected"] = respects and rep.verdicts["blocks_act_as_full_symmetric"] and rep.order in (small, wreath)
    rep.notes.append(f"measured order {rep.order}; m^(n-1) n! = {small}, m^n n! = {wreath}")
    return rep
