"""End-to-end delivery over a built scheme with real packet payloads.

Packets are B-byte values held as ints (XOR is the only server-side
operation). A file consists of K parts of F' packets each; part g is covered
by the round-g arrays.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DemandOutOfRange, DimensionMismatch, UndecodablePacket
from .pda import STAR
from .transform import Scheme
from .util import mod1


@dataclass(frozen=True)
class PacketLibrary:
    """All packets of all files: data[n-1][g-1][j-1] is an int of packet_bytes bytes."""

    n_files: int
    parts_per_file: int
    packets_per_part: int
    packet_bytes: int
    data: tuple[tuple[tuple[int, ...], ...], ...]

    def packet(self, n: int, g: int, j: int) -> int:
        return self.data[n - 1][g - 1][j - 1]

    def file_bytes(self, n: int) -> bytes:
        """Whole file n, parts then packets in ascending order."""
        return b"".join(
            p.to_bytes(self.packet_bytes, "big")
            for part in self.data[n - 1]
            for p in part
        )


def library_for_scheme(
    scheme: Scheme, n_files: int | None = None, packet_bytes: int = 1, seed: int = 0
) -> PacketLibrary:
    """Deterministic random library sized to the scheme's dimensions."""
    if packet_bytes < 1:
        raise DimensionMismatch(f"packet_bytes={packet_bytes} must be >= 1")
    n = scheme.params.n if n_files is None else n_files
    rng = random.Random(seed)
    bits = 8 * packet_bytes
    data = tuple(
        tuple(
            tuple(rng.getrandbits(bits) for _ in range(scheme.pda.rows))
            for _ in range(scheme.params.k)
        )
        for _ in range(n)
    )
    return PacketLibrary(
        n_files=n,
        parts_per_file=scheme.params.k,
        packets_per_part=scheme.pda.rows,
        packet_bytes=packet_bytes,
        data=data,
    )


def _check_dims(library: PacketLibrary, scheme: Scheme) -> None:
    if (
        library.parts_per_file != scheme.params.k
        or library.packets_per_part != scheme.pda.rows
    ):
        raise DimensionMismatch(
            f"library is {library.parts_per_file}x{library.packets_per_part} "
            f"per file, scheme needs {scheme.params.k}x{scheme.pda.rows}"
        )


def populate_caches(library: PacketLibrary, scheme: Scheme) -> tuple[frozenset, ...]:
    """Per node, the (part g, packet j) pairs it stores for every file."""
    _check_dims(library, scheme)
    k = scheme.params.k
    caches: list[set] = [set() for _ in range(k)]
    for g in range(1, k + 1):
        grid = scheme.c(g).grid
        for j, row in enumerate(grid, start=1):
            for c, starred in enumerate(row, start=1):
                if starred:
                    caches[c - 1].add((g, j))
    return tuple(frozenset(s) for s in caches)


def node_cache_bytes(library: PacketLibrary, cache: frozenset) -> int:
    """Bytes a node holds: its (g, j) pairs across all files."""
    return len(cache) * library.n_files * library.packet_bytes


def user_view(scheme: Scheme, user: int, g: int) -> frozenset[int]:
    """Rows of part g the user can read through its l consecutive nodes."""
    k = scheme.params.k
    if not (1 <= user <= k):
        raise DemandOutOfRange(f"user {user} outside [1, {k}]")
    base_col = mod1(user - (g - 1), k)
    return frozenset(
        j for j in range(1, scheme.pda.rows + 1)
        if scheme.retrieve.grid[j - 1][base_col - 1]
    )


def user_view_via_nodes(
    scheme: Scheme, caches: tuple[frozenset, ...], user: int, g: int
) -> frozenset[int]:
    """Same view, derived from the node caches instead of the retrieve array."""
    k = scheme.params.k
    rows = set()
    for off in range(scheme.params.l):
        node = mod1(user + off, k)
        rows.update(j for (gg, j) in caches[node - 1] if gg == g)
    return frozenset(rows)


@dataclass(frozen=True)
class TransmissionLog:
    """Server output: one XOR message per (round g, integer s), lex order."""

    messages: tuple[tuple[int, int, int], ...]  # (g, s, payload)
    packet_bytes: int

    @property
    def total_packets_sent(self) -> int:
        return len(self.messages)

    @property
    def bytes_sent(self) -> int:
        return len(self.messages) * self.packet_bytes


def check_demand(demand, k: int, n_files: int) -> tuple[int, ...]:
    d = tuple(demand)
    if len(d) != k:
        raise DemandOutOfRange(f"demand length {len(d)} != K={k}")
    for x in d:
        if not (1 <= x <= n_files):
            raise DemandOutOfRange(f"demand entry {x} outside [1, {n_files}]")
    return d


def constituents(qgrid) -> dict[int, list[tuple[int, int]]]:
    """Map integer s -> its (row j, user column c) cells in one delivery grid."""
    out: dict[int, list[tuple[int, int]]] = {}
    for j, row in enumerate(qgrid, start=1):
        for c, v in enumerate(row, start=1):
            if v != STAR:
                out.setdefault(v, []).append((j, c))
    return out


def deliver(library: PacketLibrary, scheme: Scheme, demand) -> TransmissionLog:
    """XOR the demanded packets cell-group by cell-group, all K rounds."""
    _check_dims(library, scheme)
    d = check_demand(demand, scheme.params.k, library.n_files)
    messages = []
    for g in range(1, scheme.params.k + 1):
        groups = constituents(scheme.q(g).grid)
        for s in range(1, scheme.pda.s + 1):
            payload = 0
            for j, c in groups[s]:
                payload ^= library.packet(d[c - 1], g, j)
            messages.append((g, s, payload))
    return TransmissionLog(messages=tuple(messages), packet_bytes=library.packet_bytes)


def decode_from_messages(
    library: PacketLibrary, scheme: Scheme, demand, messages: dict, user: int
) -> bytes:
    """Rebuild the user's demanded file from its view plus message payloads.

    messages maps (g, s) -> payload int. Raises UndecodablePacket when a
    needed message is absent or a peer packet is outside the user's view.
    """
    d = check_demand(demand, scheme.params.k, library.n_files)
    want = d[user - 1]
    out = []
    for g in range(1, scheme.params.k + 1):
        view = user_view(scheme, user, g)
        groups = constituents(scheme.q(g).grid)
        qcol = [scheme.q(g).grid[j - 1][user - 1] for j in range(1, scheme.pda.rows + 1)]
        for j in range(1, scheme.pda.rows + 1):
            if j in view:
                out.append(library.packet(want, g, j))
                continue
            s = qcol[j - 1]
            assert s != STAR, "non-view rows must carry an integer"
            if (g, s) not in messages:
                raise UndecodablePacket(f"message (g={g}, s={s}) missing from the log")
            val = messages[(g, s)]
            for jj, cc in groups[s]:
                if (jj, cc) == (j, user):
                    continue
                if jj not in view:
                    raise UndecodablePacket(
                        f"peer packet row {jj} outside user {user}'s view in round {g}"
                    )
                val ^= library.packet(d[cc - 1], g, jj)
            out.append(val)
    return b"".join(p.to_bytes(library.packet_bytes, "big") for p in out)


def decode(
    library: PacketLibrary, scheme: Scheme, demand, log: TransmissionLog, user: int
) -> bytes:
    """Decode straight from a transmission log."""
    msgs = {(g, s): payload for g, s, payload in log.messages}
    return decode_from_messages(library, scheme, demand, msgs, user)


def worst_case_load(library: PacketLibrary, scheme: Scheme, demands) -> Fraction:
    """Max sent-packets/F over the given demand vectors, as an exact ratio."""
    f = scheme.subpacketization
    best = Fraction(0)
    for d in demands:
        log = deliver(library, scheme, d)
        best = max(best, Fraction(log.total_packets_sent, f))
    return best


def demand_suite(k: int, n: int, seed: int = 0, n_random: int = 20,
                 exhaustive_cap: int = 100_000) -> tuple[tuple[int, ...], ...]:
    """Demand vectors for sweeps: exhaustive when small, else a fixed recipe.

    The recipe is identity (cyclic when n < k), constant, reversed, then
    seeded uniform samples.
    """
    if n**k <= exhaustive_cap:
        return tuple(product(range(1, n + 1), repeat=k))
    rng = random.Random(seed)
    fixed = [
        tuple(mod1(i, n) for i in range(1, k + 1)),
        tuple(1 for _ in range(k)),
        tuple(mod1(k - i + 1, n) for i in range(1, k + 1)),
    ]
    rand = [tuple(rng.randint(1, n) for _ in range(k)) for _ in range(n_random)]
    return tuple(fixed + rand)
