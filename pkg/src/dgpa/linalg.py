"""Sparse exact row reduction over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Mapping

ZERO = Fraction(0)


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Vectors are dicts column -> Fraction. The pivot of a row is its largest
    column under ``key``; every stored row is monic at its pivot and has no
    entries at other pivots, so reduction is a single pass.
    """

    def __init__(self, key: Callable = None):
        self.key = key or (lambda c: c)
        self.rows: Dict[Hashable, Dict] = {}
        self._cols: Dict[Hashable, set] = {}

    def __len__(self):
        return len(self.rows)

    def rank(self) -> int:
        return len(self.rows)

    def is_pivot(self, col) -> bool:
        return col in self.rows

    def reduce(self, vec: Mapping) -> Dict:
        rows = self.rows
        out = dict(vec)
        for col, c in vec.items():
            row = rows.get(col)
            if row is None:
                continue
            for k, v in row.items():
                nv = out.get(k, ZERO) - c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping) -> bool:
        """Add vec to the span; returns False if it was already inside."""
        r = self.reduce(vec)
        if not r:
            return False
        self._insert(r)
        return True

    def _insert(self, r: Dict):
        p = max(r, key=self.key)
        c = r[p]
        if c != 1:
            inv = 1 / c
            r = {k: v * inv for k, v in r.items()}
        cols = self._cols
        for q in list(cols.get(p, ())):
            row = self.rows[q]
            f = row[p]
            for k, v in r.items():
                nv = row.get(k, ZERO) - f * v
                if nv:
                    if k not in row:
                        cols.setdefault(k, set()).add(q)
                    row[k] = nv
                else:
                    row.pop(k, None)
                    if k != q:
                        s = cols.get(k)
                        if s is not None:
                            s.discard(q)
        cols.pop(p, None)
        self.rows[p] = r
        for k in r:
            if k != p:
                cols.setdefault(k, set()).add(p)

    def vectors(self):
        """Rows in increasing pivot order."""
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]


def kernel_and_image(columns: Mapping[Hashable, Mapping], source_key: Callable, target_key: Callable):
    """Kernel basis and image echelon of a linear map.

    ``columns`` sends each source basis label to its image vector. Returns
    (kernel vectors over source labels, Echelon of the image).
    """
    def key(c):
        tag, lab = c
        return (tag, target_key(lab)) if tag == 1 else (tag, source_key(lab))

    ech = Echelon(key)
    for lab, img in columns.items():
        vec = {(1, k): v for k, v in img.items()}
        vec[(0, lab)] = Fraction(1)
        ech.add(vec)
    kernel = []
    image = Echelon(target_key)
    for p in sorted(ech.rows, key=key):
        row = ech.rows[p]
        if p[0] == 0:
            kernel.append({lab: v for (tag, lab), v in row.items() if tag == 0})
        else:
            image.add({lab: v for (tag, lab), v in row.items() if tag == 1})
    return kernel, image
