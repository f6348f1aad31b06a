"""Binary transaction databases with exact support counting.

Each transaction is one Python int used as a fixed-width bit row
(bit i set = item i present), so support queries are masked-equality
scans and every count is an exact integer.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

# Cell tables enumerate 2**|X| value vectors; refuse wider queries by default.
CELL_WIDTH_LIMIT = 20


class FimiParseError(ValueError):
    """Malformed transaction file. Carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CapacityError(ValueError):
    """The operation would enumerate more cells or subsets than its guard allows."""


def canon_items(items: Iterable[int]) -> tuple[int, ...]:
    """Canonical itemset: strictly increasing tuple, duplicates collapsed."""
    out = tuple(sorted({int(i) for i in items}))
    if out and out[0] < 0:
        raise ValueError(f"negative item id {out[0]}")
    return out


class TransactionDatabase:
    """Immutable sequence of (tid, bit row) transactions over items 0..n_items-1."""

    __slots__ = ("tids", "rows", "n_items", "__weakref__")

    def __init__(self, transactions: Iterable[Iterable[int]], n_items: int | None = None,
                 tids: Sequence[int] | None = None):
        masks = []
        widest = -1
        for items in transactions:
            m = 0
            for i in items:
                i = int(i)
                if i < 0:
                    raise ValueError(f"negative item id {i}")
                m |= 1 << i
                if i > widest:
                    widest = i
            masks.append(m)
        k = widest + 1
        if n_items is None:
            n_items = k
        elif n_items < k:
            raise ValueError(f"n_items={n_items} too small for item id {widest}")
        object.__setattr__(self, "rows", tuple(masks))
        object.__setattr__(self, "n_items", int(n_items))
        if tids is None:
            tids = range(len(masks))
        tids = tuple(int(t) for t in tids)
        if len(tids) != len(masks):
            raise ValueError("tids length does not match transaction count")
        object.__setattr__(self, "tids", tids)

    @classmethod
    def _from_masks(cls, masks, n_items, tids):
        db = cls.__new__(cls)
        object.__setattr__(db, "rows", tuple(masks))
        object.__setattr__(db, "n_items", n_items)
        object.__setattr__(db, "tids", tuple(tids))
        return db

    @classmethod
    def from_matrix(cls, matrix, tids=None) -> "TransactionDatabase":
        """Build from a 0/1 matrix (rows = transactions, columns = items)."""
        shape = getattr(matrix, "shape", None)
        matrix = [list(row) for row in matrix]
        if matrix:
            n_items = len(matrix[0])
        elif shape is not None and len(shape) == 2:
            n_items = int(shape[1])
        else:
            n_items = 0
        masks = []
        for row in matrix:
            if len(row) != n_items:
                raise ValueError("ragged matrix")
            m = 0
            for j, v in enumerate(row):
                if v not in (0, 1, True, False):
                    raise ValueError(f"matrix entry {v!r} is not binary")
                if v:
                    m |= 1 << j
            masks.append(m)
        if tids is None:
            tids = range(len(masks))
        return cls._from_masks(masks, n_items, tids)

    def __setattr__(self, name, value):
        raise AttributeError("TransactionDatabase is immutable")

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransactionDatabase):
            return NotImplemented
        return (self.rows, self.tids, self.n_items) == (other.rows, other.tids, other.n_items)

    def __hash__(self) -> int:
        return hash((self.rows, self.tids, self.n_items))

    def __repr__(self) -> str:
        return f"TransactionDatabase({len(self)} transactions, {self.n_items} items)"

    def row_items(self, idx: int) -> tuple[int, ...]:
        """Items of one transaction as a sorted tuple."""
        r = self.rows[idx]
        return tuple(i for i in range(self.n_items) if r >> i & 1)

    def subset(self, keep: Iterable[int]) -> "TransactionDatabase":
        """Sub-database keeping the given transaction indices; tids and width are preserved."""
        keep = list(keep)
        return TransactionDatabase._from_masks(
            [self.rows[i] for i in keep], self.n_items, [self.tids[i] for i in keep])

    def to_matrix(self):
        """Dense 0/1 numpy matrix of shape (len(self), n_items)."""
        import numpy as np

        m = np.zeros((len(self), self.n_items), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n_items):
                if r >> j & 1:
                    m[i, j] = 1
        return m

    def item_mask(self, items: Iterable[int]) -> int:
        """Bit mask for an itemset; rejects items outside 0..n_items-1."""
        mask = 0
        for i in items:
            if not 0 <= i < self.n_items:
                raise ValueError(f"item {i} outside 0..{self.n_items - 1}")
            mask |= 1 << i
        return mask


def parse_fimi(text: str) -> TransactionDatabase:
    """Parse whitespace-separated item-id lines (one transaction per line).

    Repeated items within a line collapse to one; blank lines are skipped.
    The item universe is 0..max_id seen anywhere in the file.
    """
    transactions = []
    widest = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        mask = 0
        for tok in line.split():
            try:
                i = int(tok)
            except ValueError:
                raise FimiParseError(lineno, f"non-integer item token {tok!r}") from None
            if i < 0:
                raise FimiParseError(lineno, f"negative item id {i}")
            mask |= 1 << i
            if i > widest:
                widest = i
        transactions.append(mask)
    return TransactionDatabase._from_masks(transactions, widest + 1, range(len(transactions)))


def load_fimi(path) -> TransactionDatabase:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fimi(fh.read())


def parse_labels(text: str) -> dict[int, str]:
    """Parse an ``id<TAB>label`` sidecar into a dict."""
    labels = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t", 1)
        if len(parts) != 2:
            raise FimiParseError(lineno, "expected 'id<TAB>label'")
        try:
            idx = int(parts[0])
        except ValueError:
            raise FimiParseError(lineno, f"non-integer item id {parts[0]!r}") from None
        labels[idx] = parts[1].strip()
    return labels


def load_labels(path) -> dict[int, str]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_labels(fh.read())


def support(db: TransactionDatabase, items: Iterable[int]) -> int:
    """Number of transactions containing every item of the itemset."""
    mask = db.item_mask(items)
    return sum(1 for r in db.rows if r & mask == mask)


def generalized_support(db: TransactionDatabase, items: Sequence[int], values: Sequence[int]) -> int:
    """Number of transactions whose restriction to the itemset equals the 0/1 vector."""
    items = tuple(items)
    if len(values) != len(items):
        raise ValueError(f"value vector length {len(values)} != itemset size {len(items)}")
    mask = db.item_mask(items)
    want = 0
    for i, v in zip(items, values):
        if v not in (0, 1):
            raise ValueError(f"value {v!r} is not 0/1")
        if v:
            want |= 1 << i
    return sum(1 for r in db.rows if r & mask == want)


def one_zero_cells(db: TransactionDatabase, items: Sequence[int]) -> tuple[int, ...]:
    """For each item x of the itemset: count of transactions containing all the
    other items but not x. Entry order follows the (sorted) itemset."""
    items = canon_items(items)
    mask = db.item_mask(items)
    out = []
    for x in items:
        want = mask ^ (1 << x)
        out.append(sum(1 for r in db.rows if r & mask == want))
    return tuple(out)


class CellTable:
    """Counts of every 0/1 value vector over an itemset. Sums to |D|."""

    __slots__ = ("items", "counts")

    def __init__(self, items: tuple[int, ...], counts: dict[tuple[int, ...], int]):
        self.items = items
        self.counts = counts

    def __getitem__(self, values) -> int:
        return self.counts[tuple(values)]

    def __len__(self) -> int:
        return len(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def parity_split(self) -> tuple[list[int], list[int]]:
        """Cell counts split by parity of ones in the value vector: (odd, even)."""
        odd, even = [], []
        for v, c in self.counts.items():
            (odd if sum(v) % 2 else even).append(c)
        return odd, even


def cell_table(db: TransactionDatabase, items: Sequence[int],
               limit: int = CELL_WIDTH_LIMIT) -> CellTable:
    """Full table of generalized supports over all 2**|X| value vectors.

    One pass over the rows; a CapacityError guards |X| > limit.
    """
    items = canon_items(items)
    m = len(items)
    if m > limit:
        raise CapacityError(f"cell table over {m} items exceeds the {limit}-item limit")
    db.item_mask(items)
    counts = [0] * (1 << m)
    for r in db.rows:
        idx = 0
        for pos, x in enumerate(items):
            idx |= (r >> x & 1) << pos
        counts[idx] += 1
    table = {}
    for idx in range(1 << m):
        v = tuple(idx >> pos & 1 for pos in range(m))
        table[v] = counts[idx]
    return CellTable(items, table)
