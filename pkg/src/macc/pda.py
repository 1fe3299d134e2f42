"""Placement delivery arrays: the core grid type and its regularity checks.

An array has F' rows and K' columns; every cell is either a star or an
integer from [1, S]. Stars mark cached rows, equal integers mark cells that
share one multicast message. All public coordinates and column/row indices
are 1-based; storage is 0-based.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import C4Violation, NonUniformStars, OutOfRange, ParseError

STAR = 0  # cell value reserved for stars; integers use [1, S]


@dataclass(frozen=True)
class Pda:
    """Immutable F' x K' array over {star} u [1, S] with declared Z and S."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]
    z: int
    s: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"need at least one row and column, got {self.rows}x{self.cols}")
        if not (0 <= self.z <= self.rows):
            raise ValueError(f"Z={self.z} outside [0, {self.rows}]")
        if self.s < 0:
            raise ValueError(f"S={self.s} negative")
        if len(self.entries) != self.rows:
            raise ValueError(f"{len(self.entries)} entry rows, declared {self.rows}")
        for r, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise ValueError(f"row {r + 1} has {len(row)} cells, declared {self.cols}")
            for v in row:
                if not (0 <= v <= self.s):
                    raise ValueError(f"cell value {v} outside star/[1, {self.s}]")

    def at(self, row: int, col: int) -> int:
        """Cell at 1-based (row, col); STAR or an integer in [1, S]."""
        return self.entries[row - 1][col - 1]

    def as_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "z": self.z,
            "s": self.s,
            "entries": [list(r) for r in self.entries],
        }


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the three defining conditions with counterexamples.

    Counterexample shapes (all 1-based):
      c1: (col, star_count)        column whose star count differs from Z
      c2: (value,)                 integer in [1, S] that never occurs
      c3: ((r1, c1), (r2, c2))     equal-integer pair violating the crossing rule
    Only the first counterexample per condition is kept unless the report was
    built exhaustively.
    """

    c1_ok: bool
    c2_ok: bool
    c3_ok: bool
    c1_counterexamples: tuple = ()
    c2_counterexamples: tuple = ()
    c3_counterexamples: tuple = ()
    exhaustive: bool = False

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "c1": {"ok": self.c1_ok, "counterexamples": list(self.c1_counterexamples)},
            "c2": {"ok": self.c2_ok, "counterexamples": list(self.c2_counterexamples)},
            "c3": {"ok": self.c3_ok, "counterexamples": list(self.c3_counterexamples)},
            "exhaustive": self.exhaustive,
        }


def _positions_by_value(p: Pda) -> dict[int, list[tuple[int, int]]]:
    """Map integer value -> its 1-based positions in row-major order."""
    out: dict[int, list[tuple[int, int]]] = {}
    for r, row in enumerate(p.entries, start=1):
        for c, v in enumerate(row, start=1):
            if v != STAR:
                out.setdefault(v, []).append((r, c))
    return out


def validate_pda(p: Pda, exhaustive: bool = False) -> ValidationReport:
    """Check the three defining conditions and report counterexamples."""
    c1 = []
    for c in range(p.cols):
        n = sum(1 for r in range(p.rows) if p.entries[r][c] == STAR)
        if n != p.z:
            c1.append((c + 1, n))
            if not exhaustive:
                break

    pos = _positions_by_value(p)
    c2 = []
    for v in range(1, p.s + 1):
        if v not in pos:
            c2.append((v,))
            if not exhaustive:
                break

    c3 = []
    for v in range(1, p.s + 1):
        for (r1, c1_), (r2, c2_) in combinations(pos.get(v, ()), 2):
            bad = (
                r1 == r2
                or c1_ == c2_
                or p.entries[r1 - 1][c2_ - 1] != STAR
                or p.entries[r2 - 1][c1_ - 1] != STAR
            )
            if bad:
                c3.append(((r1, c1_), (r2, c2_)))
                if not exhaustive:
                    break
        if c3 and not exhaustive:
            break

    return ValidationReport(
        c1_ok=not c1,
        c2_ok=not c2,
        c3_ok=not c3,
        c1_counterexamples=tuple(c1),
        c2_counterexamples=tuple(c2),
        c3_counterexamples=tuple(c3),
        exhaustive=exhaustive,
    )


@dataclass(frozen=True)
class StarProfile:
    """Per-row star columns plus their index-wise extremes.

    star_sets[j] lists the starred columns of row j+1 in ascending order;
    every row carries the same count t. a[h]/b[h] are the minimum/maximum
    h-th starred column over all rows (1-based h in [1, t]).
    """

    star_sets: tuple[tuple[int, ...], ...]
    t: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "star_sets": [list(s) for s in self.star_sets],
            "t": self.t,
            "a": list(self.a),
            "b": list(self.b),
        }


def star_profile(p: Pda) -> StarProfile:
    """Extract the uniform star layout; rows must agree on the star count."""
    sets = tuple(
        tuple(c for c, v in enumerate(row, start=1) if v == STAR) for row in p.entries
    )
    counts = {len(s) for s in sets}
    if len(counts) > 1:
        raise NonUniformStars(f"row star counts differ: {sorted(counts)}")
    t = counts.pop()
    a = tuple(min(s[h] for s in sets) for h in range(t))
    b = tuple(max(s[h] for s in sets) for h in range(t))
    return StarProfile(star_sets=sets, t=t, a=a, b=b)


def check_c4(p: Pda) -> bool:
    """True when K'Z/F' is an integer and every row has exactly that many stars."""
    if (p.cols * p.z) % p.rows != 0:
        return False
    t = (p.cols * p.z) // p.rows
    return all(sum(1 for v in row if v == STAR) == t for row in p.entries)


def retrieve_window(star_cols: tuple[int, ...], l: int) -> frozenset[int]:
    """Columns reachable around stars at the given access degree.

    The h-th star contributes the block [col + (h-1)(l-1), col + h(l-1)].
    """
    out = set()
    for h, c in enumerate(star_cols, start=1):
        out.update(range(c + (h - 1) * (l - 1), c + h * (l - 1) + 1))
    return frozenset(out)


def check_c5(p: Pda, l: int) -> bool:
    """Check the multiaccess crossing condition at access degree l.

    For every pair of equal integers p[j1,k1] = p[j2,k2], the column k1
    shifted by its rank inside sorted(stars(j1) u {k1}) must fall in row j2's
    retrieve window, and symmetrically. At l = 1 this reduces to the plain
    crossing condition.
    """
    if l < 1:
        raise OutOfRange(f"access degree l={l} must be >= 1")
    if not check_c4(p):
        raise C4Violation("uniform per-row star count required before this check")
    prof = star_profile(p)
    windows = [retrieve_window(s, l) for s in prof.star_sets]

    def shifted(j: int, k: int) -> int:
        ranked = sorted(set(prof.star_sets[j - 1]) | {k})
        i = ranked.index(k) + 1
        return k + (i - 1) * (l - 1)

    for positions in _positions_by_value(p).values():
        for (j1, k1), (j2, k2) in combinations(positions, 2):
            if shifted(j1, k1) not in windows[j2 - 1]:
                return False
            if shifted(j2, k2) not in windows[j1 - 1]:
                return False
    return True


def serialize_pda(p: Pda) -> str:
    """Render the canonical text form: 'K' F' Z S' header then F' token rows."""
    lines = [f"{p.cols} {p.rows} {p.z} {p.s}"]
    for row in p.entries:
        lines.append(" ".join("*" if v == STAR else str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_pda_with_map(text: str) -> tuple[Pda, dict[int, int] | None]:
    """Parse the text form; gapped integer alphabets are renumbered.

    Returns the array and, when renumbering happened, the old->new value map
    (ascending order preserving). Raises ParseError on malformed input.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 4:
        raise ParseError(f"header needs 4 integers (K' F' Z S), got {lines[0]!r}")
    try:
        cols, rows, z, s = (int(x) for x in head)
    except ValueError as e:
        raise ParseError(f"bad header {lines[0]!r}") from e
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} data rows, found {len(body)}")

    grid = []
    for i, ln in enumerate(body, start=1):
        toks = ln.split()
        if len(toks) != cols:
            raise ParseError(f"row {i} has {len(toks)} tokens, expected {cols}")
        row = []
        for tok in toks:
            if tok == "*":
                row.append(STAR)
                continue
            try:
                v = int(tok)
            except ValueError as e:
                raise ParseError(f"row {i}: bad token {tok!r}") from e
            if not (1 <= v <= s):
                raise ParseError(f"row {i}: value {v} outside [1, {s}]")
            row.append(v)
        grid.append(tuple(row))

    used = sorted({v for row in grid for v in row if v != STAR})
    relabel = None
    if used != list(range(1, len(used) + 1)) or s != len(used):
        relabel = {old: new for new, old in enumerate(used, start=1)}
        grid = [tuple(relabel[v] if v != STAR else STAR for v in row) for row in grid]
        s = len(used)
    return Pda(rows=rows, cols=cols, entries=tuple(grid), z=z, s=s), relabel


def parse_pda(text: str) -> Pda:
    """Parse the text form, discarding any renumbering record."""
    return parse_pda_with_map(text)[0]
