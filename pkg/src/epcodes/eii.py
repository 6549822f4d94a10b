"""Array codes with nested row codes and per-row parity budgets.

A code instance is described by a profile: one parity count per row,
sorted non-decreasing, each at most the row length n.  Rows with budget
n carry no data at all.  An m x n array belongs to the code when every
row lies in the outermost row code and, for every depth i >= 1, the
alpha-weighted row combinations

    sum_j alpha**(r*j) * row_j,    r = 0 .. shat_i - 1,

land in the i-th nested row code, where shat_i counts the rows with
budget at least the i-th distinct level.  Erasure decoding triangulates
that combination system so each unresolved row is isolated against fully
known rows and corrected in the deepest code its combination belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldContext
from .linalg import ParityMatrix
from .rs import RsCode, LengthExceedsOrder, build_rs

FULLY_CORRECTED = "FullyCorrected"
PARTIALLY_CORRECTED = "PartiallyCorrected"
FAILED = "Failed"


class ProfileError(ValueError):
    pass


class NotSorted(ProfileError):
    pass


class EntryExceedsN(ProfileError):
    pass


class HasErasures(ValueError):
    pass


class WrongDataLength(ValueError):
    pass


class Profile:
    """Non-decreasing per-row parity budgets for rows of length n.

    Derived structure: the distinct budget values below n are the levels
    u_0 < ... < u_{t-1}; level t is n itself whether or not any row sits
    there.  mults[i] counts rows at level i, suffix[i] counts rows at
    level i or deeper (suffix[0] = m).
    """

    def __init__(self, entries, n: int):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise ProfileError("profile needs at least one row")
        if n < 1:
            raise ProfileError("row length must be positive")
        for a, b in zip(entries, entries[1:]):
            if b < a:
                raise NotSorted("entries must be non-decreasing: %r" % (entries,))
        if entries[0] < 0:
            raise ProfileError("entries must be non-negative")
        if entries[-1] > n:
            raise EntryExceedsN("entry %d exceeds row length %d"
                                % (entries[-1], n))
        self.entries = entries
        self.n = n
        self.m = len(entries)

        below = sorted(set(e for e in entries if e < n))
        self.t = len(below)
        self.levels = tuple(below) + (n,)
        self.mults = tuple(sum(1 for e in entries if e == lv)
                           for lv in self.levels)
        suffix = []
        acc = 0
        for s in reversed(self.mults):
            acc += s
            suffix.append(acc)
        self.suffix = tuple(reversed(suffix))

    def suffix_at(self, i: int) -> int:
        return self.suffix[i] if i <= self.t else 0

    def combo_level(self, r: int) -> int:
        """Deepest level w whose combination budget covers index r."""
        w = self.t
        while r >= self.suffix_at(w):
            w -= 1
        return w

    @property
    def parity_count(self) -> int:
        return sum(self.entries)

    def dimension(self) -> int:
        return self.m * self.n - self.parity_count

    def min_distance(self) -> int:
        if self.t == 0:
            raise ProfileError("all-parity profile has no nonzero words")
        return min((self.suffix_at(i + 1) + 1) * (self.levels[i] + 1)
                   for i in range(self.t))

    def tail_parity_cols(self, row: int) -> range:
        """Columns holding parity in the given row under the tail layout."""
        return range(self.n - self.entries[row], self.n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Profile)
                and self.entries == other.entries and self.n == other.n)

    def __hash__(self) -> int:
        return hash((self.entries, self.n))

    def __repr__(self) -> str:
        return "Profile(%r, n=%d)" % (list(self.entries), self.n)


def make_profile(entries, n: int) -> Profile:
    return Profile(entries, n)


class SymbolGrid:
    """m x n cells over a field plus a per-cell erasure mask."""

    def __init__(self, cells, mask=None):
        self.cells = [list(row) for row in cells]
        self.m = len(self.cells)
        self.n = len(self.cells[0]) if self.cells else 0
        for row in self.cells:
            if len(row) != self.n:
                raise ValueError("ragged grid")
        if mask is None:
            self.mask = [[False] * self.n for _ in range(self.m)]
        else:
            self.mask = [list(row) for row in mask]
            if len(self.mask) != self.m or any(len(r) != self.n for r in self.mask):
                raise ValueError("mask shape differs from cells")

    @classmethod
    def zeros(cls, m: int, n: int) -> "SymbolGrid":
        return cls([[0] * n for _ in range(m)])

    def copy(self) -> "SymbolGrid":
        return SymbolGrid(self.cells, self.mask)

    def erase(self, row: int, col: int) -> None:
        self.mask[row][col] = True

    def erased_in_row(self, row: int) -> list[int]:
        return [c for c in range(self.n) if self.mask[row][c]]

    def erasure_count(self) -> int:
        return sum(sum(1 for v in row if v) for row in self.mask)

    def erasure_coords(self) -> list[tuple[int, int]]:
        return [(r, c) for r in range(self.m) for c in range(self.n)
                if self.mask[r][c]]

    def is_clean(self) -> bool:
        return not any(any(row) for row in self.mask)

    def transpose(self) -> "SymbolGrid":
        cells = [[self.cells[r][c] for r in range(self.m)] for c in range(self.n)]
        mask = [[self.mask[r][c] for r in range(self.m)] for c in range(self.n)]
        return SymbolGrid(cells, mask)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymbolGrid)
                and self.cells == other.cells and self.mask == other.mask)

    def __repr__(self) -> str:
        return "SymbolGrid(%dx%d, %d erased)" % (self.m, self.n,
                                                 self.erasure_count())


@dataclass(frozen=True)
class DecodeReport:
    grid: SymbolGrid
    status: str
    corrected_rows: frozenset
    residual: tuple
    passes: int


def row_correctable(profile: Profile, counts) -> tuple[bool, set]:
    """Which rows survive triangulation for the given erasure counts.

    Counts are sorted ascending and matched against the profile entries
    position by position; the rows behind the first position where the
    count overshoots its budget stay uncorrected.  Ties sort by original
    row index so the outcome is deterministic.
    """
    counts = list(counts)
    if len(counts) != profile.m:
        raise ValueError("need one count per row")
    order = sorted(range(profile.m), key=lambda r: (counts[r], r))
    good = set()
    for pos, r in enumerate(order):
        if counts[r] > profile.entries[pos]:
            return False, good
        good.add(r)
    return True, good


class EiiCode:
    """The array code for one profile over one field context."""

    def __init__(self, profile: Profile, ctx: FieldContext):
        need = max(profile.m, profile.n)
        if not ctx.order_at_least(need):
            raise LengthExceedsOrder(
                "grid %dx%d needs order(alpha) >= %d in %r"
                % (profile.m, profile.n, need, ctx))
        self.profile = profile
        self.ctx = ctx
        self._row_codes: dict[int, RsCode] = {}
        self._parity_cells: list[tuple[int, int]] | None = None
        self._parity_map: list[list[int]] | None = None

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def n(self) -> int:
        return self.profile.n

    def row_code(self, level: int) -> RsCode:
        if level not in self._row_codes:
            self._row_codes[level] = build_rs(self.ctx, self.n,
                                              self.profile.levels[level])
        return self._row_codes[level]

    def dimension(self) -> int:
        return self.profile.dimension()

    def min_distance(self) -> int:
        return self.profile.min_distance()

    # -- membership -----------------------------------------------------

    def is_codeword(self, grid: SymbolGrid) -> bool:
        if not grid.is_clean():
            raise HasErasures("membership is defined on fully known grids")
        if grid.m != self.m or grid.n != self.n:
            raise ValueError("grid shape %dx%d != code shape %dx%d"
                             % (grid.m, grid.n, self.m, self.n))
        c0 = self.row_code(0)
        if not all(c0.contains(row) for row in grid.cells):
            return False
        for i in range(1, self.profile.t + 1):
            code = self.row_code(i)
            for r in range(self.profile.suffix_at(i)):
                combo = self._combo(grid.cells, r)
                if not code.contains(combo):
                    return False
        return True

    def _combo(self, cells, r: int) -> list[int]:
        ctx = self.ctx
        out = [0] * self.n
        for j, row in enumerate(cells):
            coef = ctx.alpha_pow(r * j)
            for c, v in enumerate(row):
                if v:
                    out[c] ^= ctx.mul(coef, v)
        return out

    # -- erasure decoding -----------------------------------------------

    def decode_rows(self, grid: SymbolGrid) -> DecodeReport:
        """One pass of per-row correction plus triangulation.

        Rows within the outermost budget are corrected directly.  The
        rest enter the combination system, most-erased first; rows are
        then recovered least-erased first until one overshoots the
        budget of the code its combination sits in, which by the sorted
        matching of row_correctable is exactly where correction stops.
        """
        g = grid.copy()
        before = g.erasure_count()
        if before == 0:
            return DecodeReport(g, FULLY_CORRECTED, frozenset(), (), 0)

        prof = self.profile
        ctx = self.ctx
        u0 = prof.levels[0]
        corrected: set[int] = set()
        failed: list[int] = []
        counts = [len(g.erased_in_row(r)) for r in range(self.m)]
        for r in range(self.m):
            if counts[r] == 0:
                continue
            if counts[r] <= u0:
                fixed = self.row_code(0).erasure_decode(
                    g.cells[r], g.erased_in_row(r))
                if fixed is None:
                    failed.append(r)
                    continue
                g.cells[r] = fixed
                g.mask[r] = [False] * self.n
                corrected.add(r)
            else:
                failed.append(r)

        if failed:
            order = sorted(failed, key=lambda r: (-counts[r], r))
            fixed_rows = self._triangulate(g, order)
            corrected |= fixed_rows

        residual = tuple(g.erasure_coords())
        if not residual:
            status = FULLY_CORRECTED
        elif corrected:
            status = PARTIALLY_CORRECTED
        else:
            status = FAILED
        passes = 1 if g.erasure_count() < before else 0
        return DecodeReport(g, status, frozenset(corrected), residual, passes)

    def _triangulate(self, g: SymbolGrid, order: list[int]) -> set[int]:
        """Recover the rows in `order` (most-erased first) in place.

        Returns the set of rows actually corrected.  Combination r of
        the system lies in the code at combo_level(r); eliminating
        earlier combinations into later ones keeps each membership,
        since earlier ones sit in deeper codes.
        """
        ctx = self.ctx
        prof = self.profile
        l = len(order)
        unknown = set(order)
        # combination coefficients over the unknown rows, plus the fully
        # known contribution of every other row
        mat = [[ctx.alpha_pow(r * j) for j in order] for r in range(l)]
        rest = []
        for r in range(l):
            acc = [0] * self.n
            for j in range(self.m):
                if j in unknown:
                    continue
                coef = ctx.alpha_pow(r * j)
                row = g.cells[j]
                for c in range(self.n):
                    if row[c]:
                        acc[c] ^= ctx.mul(coef, row[c])
            rest.append(acc)

        for p in range(l):
            inv = ctx.inv(mat[p][p])
            if inv != 1:
                mat[p] = [ctx.mul(inv, v) for v in mat[p]]
                rest[p] = [ctx.mul(inv, v) for v in rest[p]]
            for r in range(p + 1, l):
                f = mat[r][p]
                if f == 0:
                    continue
                mat[r] = [a ^ ctx.mul(f, b) for a, b in zip(mat[r], mat[p])]
                rest[r] = [a ^ ctx.mul(f, b) for a, b in zip(rest[r], rest[p])]

        fixed: set[int] = set()
        for p in range(l - 1, -1, -1):
            row = order[p]
            erased = g.erased_in_row(row)
            w = prof.combo_level(p)
            if len(erased) > prof.levels[w]:
                break
            word = list(rest[p])
            for c in range(self.n):
                if not g.mask[row][c]:
                    word[c] ^= g.cells[row][c]
            for p2 in range(p + 1, l):
                f = mat[p][p2]
                if f == 0:
                    continue
                lower = g.cells[order[p2]]
                for c in range(self.n):
                    if lower[c]:
                        word[c] ^= ctx.mul(f, lower[c])
            dec = self.row_code(w).erasure_decode(word, erased)
            if dec is None:
                break
            # at erased cells, word held only the known contribution
            for c in erased:
                g.cells[row][c] = dec[c] ^ word[c]
                g.mask[row][c] = False
            fixed.add(row)
        return fixed

    # -- encoding -------------------------------------------------------

    def parity_cells(self) -> list[tuple[int, int]]:
        if self._parity_cells is None:
            self._parity_cells = [(r, c) for r in range(self.m)
                                  for c in self.profile.tail_parity_cols(r)]
        return self._parity_cells

    def data_cells(self) -> list[tuple[int, int]]:
        parity = set(self.parity_cells())
        return [(r, c) for r in range(self.m) for c in range(self.n)
                if (r, c) not in parity]

    def encode(self, data) -> SymbolGrid:
        """Fill the tail parity layout around the data symbols.

        The parity cells form a pattern the triangulation always
        resolves, so encoding is erasure decoding; the linear map from
        data to parity is probed once and cached.
        """
        data = list(data)
        k = self.dimension()
        if len(data) != k:
            raise WrongDataLength("want %d data symbols, got %d"
                                  % (k, len(data)))
        for v in data:
            self.ctx.check(v)
        if self._parity_map is None:
            self._parity_map = self._probe_parity_map()
        ctx = self.ctx
        parity = [0] * len(self.parity_cells())
        for i, v in enumerate(data):
            if v:
                col = self._parity_map[i]
                for p in range(len(parity)):
                    if col[p]:
                        parity[p] ^= ctx.mul(col[p], v)
        grid = SymbolGrid.zeros(self.m, self.n)
        for (r, c), v in zip(self.data_cells(), data):
            grid.cells[r][c] = v
        for (r, c), v in zip(self.parity_cells(), parity):
            grid.cells[r][c] = v
        return grid

    def _probe_parity_map(self) -> list[list[int]]:
        cells = self.data_cells()
        pcells = self.parity_cells()
        cols = []
        for i in range(len(cells)):
            grid = SymbolGrid.zeros(self.m, self.n)
            grid.cells[cells[i][0]][cells[i][1]] = 1
            for (r, c) in pcells:
                grid.erase(r, c)
            report = self.decode_rows(grid)
            if report.status != FULLY_CORRECTED:
                raise AssertionError("tail layout failed to decode")
            cols.append([report.grid.cells[r][c] for (r, c) in pcells])
        return cols

    # -- smallest-support codewords -------------------------------------

    def min_weight_codeword(self, level: int, rows, cols) -> SymbolGrid:
        """Codeword supported exactly on rows x cols.

        The column part is a word of the level-th row code alive on
        len(cols) = levels[level]+1 positions; the row part solves the
        companion coefficient system on len(rows) = suffix[level+1]+1
        rows.  Both come out of the same closed form: the coefficient at
        position s is the inverse of the product of the differences of
        the position locators.
        """
        prof = self.profile
        if not 0 <= level <= prof.t - 1:
            raise ValueError("level %d outside 0..%d" % (level, prof.t - 1))
        rows = sorted(set(rows))
        cols = sorted(set(cols))
        if len(rows) != prof.suffix_at(level + 1) + 1:
            raise ValueError("want %d rows" % (prof.suffix_at(level + 1) + 1))
        if len(cols) != prof.levels[level] + 1:
            raise ValueError("want %d columns" % (prof.levels[level] + 1))
        if rows[0] < 0 or rows[-1] >= self.m:
            raise ValueError("row index out of range")
        if cols[0] < 0 or cols[-1] >= self.n:
            raise ValueError("column index out of range")

        col_word = _difference_null_vector(self.ctx, cols)
        row_coef = _difference_null_vector(self.ctx, rows)
        grid = SymbolGrid.zeros(self.m, self.n)
        for r, vr in zip(rows, row_coef):
            for c, vc in zip(cols, col_word):
                grid.cells[r][c] = self.ctx.mul(vr, vc)
        return grid

    # -- oracle support -------------------------------------------------

    def assembled_parity_matrix(self) -> ParityMatrix:
        """All membership constraints as one matrix over the mn cells.

        Cell (j, c) maps to column j*n + c.  Redundant rows are kept;
        rank equals mn minus the dimension.
        """
        ctx = self.ctx
        prof = self.profile
        rows = []
        u0 = prof.levels[0]
        for j in range(self.m):
            for rp in range(u0):
                vec = [0] * (self.m * self.n)
                for c in range(self.n):
                    vec[j * self.n + c] = ctx.alpha_pow(rp * c)
                rows.append(vec)
        for i in range(1, prof.t + 1):
            ui = prof.levels[i]
            for r in range(prof.suffix_at(i)):
                for rp in range(ui):
                    vec = [0] * (self.m * self.n)
                    for j in range(self.m):
                        for c in range(self.n):
                            vec[j * self.n + c] = ctx.alpha_pow(r * j + rp * c)
                    rows.append(vec)
        return ParityMatrix(ctx, rows)


def build_eii(context: FieldContext, n: int, entries) -> EiiCode:
    """Convenience constructor mirroring build_rs: profile entries plus row length."""
    return EiiCode(Profile(entries, n), context)


def _difference_null_vector(ctx: FieldContext, positions: list[int]) -> list[int]:
    """Coefficients killing the first len-1 power sums of the locators.

    With locators x_s = alpha**positions[s], the vector
    v_s = 1 / prod_{l != s} (x_s + x_l) satisfies
    sum_s v_s * x_s**r = 0 for r < len(positions)-1, with every entry
    nonzero.
    """
    locs = [ctx.alpha_pow(p) for p in positions]
    out = []
    for s, xs in enumerate(locs):
        prod = 1
        for l, xl in enumerate(locs):
            if l != s:
                prod = ctx.mul(prod, xs ^ xl)
        out.append(ctx.inv(prod))
    return out
