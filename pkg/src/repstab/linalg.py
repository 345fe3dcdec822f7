"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping orderable keys to int/Fraction coefficients; zero
coefficients are never stored.  Echelon keeps a fully reduced basis so that
membership tests and coordinate extraction are single reduction passes.
"""

from fractions import Fraction


def vec_scale(v: dict, c) -> dict:
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_add(a: dict, b: dict, coeff=1) -> dict:
    out = dict(a)
    for k, x in b.items():
        val = out.get(k, 0) + coeff * x
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def add_into(dst: dict, src: dict, coeff=1) -> None:
    for k, x in src.items():
        val = dst.get(k, 0) + coeff * x
        if val:
            dst[k] = val
        else:
            dst.pop(k, None)


class Echelon:
    """Reduced row echelon basis of a subspace of the free module on orderable keys.

    Pivots are the minimal keys of their rows and are normalized to 1;
    every pivot is eliminated from every other row.
    """

    def __init__(self, vectors=None):
        self.rows: list[tuple[object, dict]] = []  # (pivot, vector), sorted by pivot
        if vectors:
            for v in vectors:
                self.insert(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        """Normal form of v modulo the span; does not modify the basis."""
        v = dict(v)
        for pivot, row in self.rows:
            c = v.get(pivot)
            if c:
                add_into(v, row, -c)
        return v

    def coords(self, v: dict):
        """(coefficients per basis row, residual normal form)."""
        v = dict(v)
        out = []
        for pivot, row in self.rows:
            c = v.get(pivot, 0)
            out.append(c)
            if c:
                add_into(v, row, -c)
        return out, v

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def insert(self, v: dict) -> bool:
        """Add v to the span; returns True if the dimension grew."""
        v = self.reduce(v)
        if not v:
            return False
        pivot = min(v)
        inv = Fraction(1, 1) / v[pivot]
        v = {k: x * inv for k, x in v.items()}
        for _, row in self.rows:
            c = row.get(pivot)
            if c:
                add_into(row, v, -c)
        self.rows.append((pivot, v))
        self.rows.sort(key=lambda pr: pr[0])
        return True

    def basis(self) -> list[dict]:
        return [dict(row) for _, row in self.rows]

    def pivots(self) -> list:
        return [pivot for pivot, _ in self.rows]


def span_dim(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return ech.dim


def kernel_basis(vectors: list[dict]) -> list[dict]:
    """Basis of {c : sum c_i vectors_i = 0}, keys are input indices."""
    ech = Echelon()
    kernel = []
    traces = []  # trace[i] expresses current row i in terms of inputs
    for idx, v in enumerate(vectors):
        v = dict(v)
        trace = {idx: 1}
        for (pivot, row), tr in zip(ech.rows, traces):
            c = v.get(pivot)
            if c:
                add_into(v, row, -c)
                add_into(trace, tr, -c)
        if not v:
            kernel.append(trace)
            continue
        pivot = min(v)
        inv = Fraction(1, 1) / v[pivot]
        v = {k: x * inv for k, x in v.items()}
        trace = {k: x * inv for k, x in trace.items()}
        # keep existing rows reduced against the new pivot
        for (p2, row), tr in zip(ech.rows, traces):
            c = row.get(pivot)
            if c:
                add_into(row, v, -c)
                add_into(tr, trace, -c)
        ech.rows.append((pivot, v))
        traces.append(trace)
        order = sorted(range(len(ech.rows)), key=lambda i: ech.rows[i][0])
        ech.rows = [ech.rows[i] for i in order]
        traces = [traces[i] for i in order]
    return kernel


def matrix_rank(columns: list[dict]) -> int:
    return span_dim(columns)
