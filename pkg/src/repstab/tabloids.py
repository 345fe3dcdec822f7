"""Pseudo-tableaux, pseudo-tabloids, column stabilizers, and the S_n action.

A pseudo-tableau of shape lam (a partition of k) in ambient n is an injective
labeling of the Young diagram by a k-element subset of {1..n}.  A pseudo-
tabloid is its row-equivalence class; the canonical representative sorts each
row ascending.  Ambient n is part of the identity: the same labeling at
levels n and n+1 are distinct basis vectors.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

from .partitions import Partition, check_partition
from .perms import Perm

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class PseudoTableau:
    n: int
    rows: Rows

    def __post_init__(self):
        labels = [x for row in self.rows for x in row]
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels not injective: {self.rows}")
        if labels and (min(labels) < 1 or max(labels) > self.n):
            raise ValueError(f"labels outside 1..{self.n}: {self.rows}")
        shape = tuple(len(r) for r in self.rows)
        check_partition(shape)

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def supp(self) -> frozenset:
        return frozenset(x for row in self.rows for x in row)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows if len(row) > j)

    def columns(self) -> list[tuple[int, ...]]:
        width = len(self.rows[0]) if self.rows else 0
        return [self.column(j) for j in range(width)]

    def tabloid(self) -> "PseudoTabloid":
        return PseudoTabloid(self.n, tuple(tuple(sorted(r)) for r in self.rows))

    def render(self) -> str:
        """Rows joined by `;`, entries by `,` (the CLI text form)."""
        return ";".join(",".join(str(x) for x in row) for row in self.rows)


@dataclass(frozen=True, order=True)
class PseudoTabloid:
    """Canonical row-sorted representative of a row-equivalence class."""

    n: int
    rows: Rows

    def __post_init__(self):
        for row in self.rows:
            if tuple(sorted(row)) != row:
                raise ValueError(f"tabloid rows must be sorted: {self.rows}")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def supp(self) -> frozenset:
        return frozenset(x for row in self.rows for x in row)

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)

    def render(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)


def parse_tableau(text: str, n: int) -> PseudoTableau:
    """Inverse of render: `7,2,1;5,3;4` with ambient n."""
    rows = tuple(
        tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk
    )
    return PseudoTableau(n, rows)


def act(sigma: Perm, t: PseudoTableau) -> PseudoTableau:
    """Relabel every box by sigma; sigma is a permutation of the ambient set."""
    if len(sigma) != t.n:
        raise ValueError(f"permutation of {len(sigma)} applied at ambient {t.n}")
    return PseudoTableau(t.n, tuple(tuple(sigma[x - 1] for x in row) for row in t.rows))


def act_tabloid(sigma: Perm, t: PseudoTabloid) -> PseudoTabloid:
    if len(sigma) != t.n:
        raise ValueError(f"permutation of {len(sigma)} applied at ambient {t.n}")
    return PseudoTabloid(
        t.n, tuple(tuple(sorted(sigma[x - 1] for x in row)) for row in t.rows)
    )


def _arrangement_sign(base: tuple[int, ...], arranged: tuple[int, ...]) -> int:
    pos = [base.index(x) for x in arranged]
    inversions = sum(
        1 for i in range(len(pos)) for j in range(i + 1, len(pos)) if pos[i] > pos[j]
    )
    return -1 if inversions % 2 else 1


def column_stabilizer(t: PseudoTableau):
    """Yield (sigma, sign) over the group preserving each column's entry set.

    Lazy product over columns; order of the group is the product of the
    factorials of the column lengths.
    """
    cols = [c for c in t.columns() if len(c) > 1]

    def rec(i: int, sigma: list[int], sgn: int):
        if i == len(cols):
            yield tuple(sigma), sgn
            return
        base = cols[i]
        for arranged in permutations(base):
            s = _arrangement_sign(base, arranged)
            for orig, new in zip(base, arranged):
                sigma[orig - 1] = new
            yield from rec(i + 1, sigma, sgn * s)
        for orig in base:
            sigma[orig - 1] = orig

    yield from rec(0, list(range(1, t.n + 1)), 1)


def column_stabilizer_order(t: PseudoTableau) -> int:
    from math import factorial

    out = 1
    for col in t.columns():
        out *= factorial(len(col))
    return out


def added_boxes(lam: Partition, mu: Partition) -> list[tuple[int, int]]:
    """Boxes of Y_mu not in Y_lam as (row, col), requiring a horizontal strip."""
    if sum(1 for i in range(1, len(mu)) if mu[i] > (lam[i - 1] if i - 1 < len(lam) else 0)):
        raise ValueError(f"{lam} does not lead to {mu} (column collision)")
    boxes = []
    for i, row in enumerate(mu):
        start = lam[i] if i < len(lam) else 0
        if row < start:
            raise ValueError(f"{lam} is not contained in {mu}")
        boxes.extend((i, j) for j in range(start, row))
    return boxes


def strip(t: PseudoTableau, lam: Partition) -> PseudoTableau:
    """Delete the boxes of shape(t)/lam together with their labels.

    Defined on tableaux only; the operation does not descend to tabloids.
    """
    boxes = set(added_boxes(lam, t.shape))
    rows = []
    for i in range(len(lam)):
        rows.append(tuple(t.rows[i][j] for j in range(len(t.rows[i])) if (i, j) not in boxes))
    return PseudoTableau(t.n, tuple(rows))


def pseudo_tabloids(lam: Partition, n: int) -> list[PseudoTabloid]:
    """All pseudo-tabloids of shape lam in ambient n, in sorted order."""
    check_partition(lam)
    k = sum(lam)
    out = []

    def split(rest: tuple[int, ...], shape: Partition, rows: Rows):
        if not shape:
            out.append(PseudoTabloid(n, rows))
            return
        for chosen in combinations(rest, shape[0]):
            remaining = tuple(x for x in rest if x not in chosen)
            split(remaining, shape[1:], rows + (chosen,))

    for supp in combinations(range(1, n + 1), k):
        split(supp, lam, ())
    return sorted(out)


def pseudo_tableaux(lam: Partition, n: int):
    """Iterate all pseudo-tableaux of shape lam in ambient n."""
    check_partition(lam)
    k = sum(lam)
    for supp in combinations(range(1, n + 1), k):
        for arranged in permutations(supp):
            rows = []
            pos = 0
            for row_len in lam:
                rows.append(tuple(arranged[pos:pos + row_len]))
                pos += row_len
            yield PseudoTableau(n, tuple(rows))


def row_major_tableau(mu: Partition, n: int) -> PseudoTableau:
    """The canonical generating tableau: boxes filled 1, 2, ... row by row."""
    rows = []
    nxt = 1
    for row_len in mu:
        rows.append(tuple(range(nxt, nxt + row_len)))
        nxt += row_len
    return PseudoTableau(n, tuple(rows))
