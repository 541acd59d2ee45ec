"""Stabilizer codes over the phase-blind Pauli group.

A code is n qubits, n-k commuting independent generators, and a chosen
logical basis (one X/Z pair per logical qubit). The logical basis fixes the
identification of N(S)/S with the logical Pauli group: the class of an
element of N(S) is its anticommutation pattern against (Z_1..Z_k, X_1..X_k),
so the class of logical X_i has a 1 in slot i and the class of logical Z_i
has a 1 in slot k+i. Generator signs are not modeled.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import CodeConstructionError, DimensionMismatch, ParseError
from .f2 import BitMatrix, BitVec, F2Span, kernel_basis, parity, reduce_against, rref, solve
from .pauli import PauliOp, parse_pauli, render, symplectic_product

_PURE_LETTERS = {None: ("X", "Y", "Z"), "x": ("X",), "z": ("Z",)}


@dataclass(frozen=True)
class LogicalClass:
    """Image of an N(S) element in N(S)/S, as a 2k-bit anticommutation pattern."""

    k: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> (2 * self.k) or self.bits < 0:
            raise ValueError("class bits exceed 2k")

    def __xor__(self, other: "LogicalClass") -> "LogicalClass":
        if self.k != other.k:
            raise ValueError("logical qubit count mismatch")
        return LogicalClass(self.k, self.bits ^ other.bits)

    def is_trivial(self) -> bool:
        return self.bits == 0

    def to_string(self) -> str:
        return class_bits_to_string(self.k, self.bits)


def class_bits_to_string(k: int, bits: int) -> str:
    """Render class bits as a logical Pauli string over k qubits."""
    return "".join("IXZY"[((bits >> i) & 1) + 2 * ((bits >> (k + i)) & 1)]
                   for i in range(k))


def class_bits_from_string(s: str, k: int, *, line: int | None = None) -> int:
    """Parse a logical Pauli string over k qubits into class bits."""
    p = parse_pauli(s, line=line)
    if p.n != k:
        raise ParseError(f"logical string has {p.n} letters, expected {k}", line=line)
    return p.x | (p.z << k)


@dataclass(frozen=True)
class DistanceResult:
    """Minimum-weight search outcome; `exact=False` means only `value = cap+1` as a bound."""

    value: int
    exact: bool
    cap: int

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value} (cap {self.cap})"


@dataclass
class Diagnostics:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def add(self, msg: str) -> None:
        self.problems.append(msg)


def _sym_vec(p: PauliOp) -> int:
    """Pack a Pauli as a 2n-bit row: x-part in low bits, z-part in high bits."""
    return p.x | (p.z << p.n)


def _sym_twist(p: PauliOp) -> int:
    """Row whose dot with a packed vector gives the symplectic product with p."""
    return p.z | (p.x << p.n)


def _unpack(v: int, n: int) -> PauliOp:
    return PauliOp(n, v & ((1 << n) - 1), v >> n)


class StabilizerCode:
    """An [n, k] stabilizer code with a fixed logical basis."""

    def __init__(self, generators: list[PauliOp], logical_x: list[PauliOp],
                 logical_z: list[PauliOp]):
        if not generators and not logical_x:
            raise CodeConstructionError("a code needs at least one generator or logical pair")
        ops = list(generators) + list(logical_x) + list(logical_z)
        n = ops[0].n
        if any(op.n != n for op in ops):
            raise CodeConstructionError("all operators must act on the same number of qubits")
        self.n = n
        self.k = n - len(generators)
        if len(logical_x) != self.k or len(logical_z) != self.k:
            raise CodeConstructionError(
                f"need exactly k={self.k} logical X and Z operators, "
                f"got {len(logical_x)}/{len(logical_z)}")
        self.generators = list(generators)
        self.logical_x = list(logical_x)
        self.logical_z = list(logical_z)
        self._init_tables()

    def _init_tables(self) -> None:
        n = self.n
        # Per-qubit, per-letter syndrome and class contributions; an error's
        # syndrome/class is the XOR over its support.
        syn_x = [0] * n
        syn_z = [0] * n
        for l, g in enumerate(self.generators):
            for q in range(n):
                if (g.z >> q) & 1:
                    syn_x[q] |= 1 << l
                if (g.x >> q) & 1:
                    syn_z[q] |= 1 << l
        self._syn_x = syn_x
        self._syn_z = syn_z
        cls_x = [0] * n
        cls_z = [0] * n
        logicals = self.logical_z + self.logical_x  # class bit order: Z block, then X block
        for i, op in enumerate(logicals):
            for q in range(n):
                if (op.z >> q) & 1:
                    cls_x[q] |= 1 << i
                if (op.x >> q) & 1:
                    cls_z[q] |= 1 << i
        self._cls_x = cls_x
        self._cls_z = cls_z
        gen_matrix = BitMatrix(tuple(_sym_vec(g) for g in self.generators), 2 * n)
        self._gen_rref = rref(gen_matrix)

    # -- raw-int fast paths -------------------------------------------------

    def syndrome_bits(self, x: int, z: int) -> int:
        out = 0
        sx, sz = self._syn_x, self._syn_z
        bits = x
        while bits:
            q = (bits & -bits).bit_length() - 1
            out ^= sx[q]
            bits &= bits - 1
        bits = z
        while bits:
            q = (bits & -bits).bit_length() - 1
            out ^= sz[q]
            bits &= bits - 1
        return out

    def class_bits(self, x: int, z: int) -> int:
        out = 0
        cx, cz = self._cls_x, self._cls_z
        bits = x
        while bits:
            q = (bits & -bits).bit_length() - 1
            out ^= cx[q]
            bits &= bits - 1
        bits = z
        while bits:
            q = (bits & -bits).bit_length() - 1
            out ^= cz[q]
            bits &= bits - 1
        return out

    def in_stabilizer_bits(self, x: int, z: int) -> bool:
        return reduce_against(self._gen_rref.reduced.rows, x | (z << self.n)) == 0

    # -- public operator-level API -------------------------------------------

    def contains_stabilizer(self, p: PauliOp) -> bool:
        """True iff p is a product of generators (phase-blind S membership)."""
        if p.n != self.n:
            raise DimensionMismatch(f"operator on {p.n} qubits, code on {self.n}")
        return self.in_stabilizer_bits(p.x, p.z)

    def class_representative(self, bits: int) -> PauliOp:
        """A physical Pauli realizing the given class: the basis-op product."""
        x = z = 0
        for i in range(self.k):
            if (bits >> i) & 1:
                op = self.logical_x[i]
                x ^= op.x
                z ^= op.z
            if (bits >> (self.k + i)) & 1:
                op = self.logical_z[i]
                x ^= op.x
                z ^= op.z
        return PauliOp(self.n, x, z)

    def with_logicals(self, logical_x: list[PauliOp], logical_z: list[PauliOp]) -> "StabilizerCode":
        return StabilizerCode(self.generators, logical_x, logical_z)


def syndrome(code: StabilizerCode, p: PauliOp) -> BitVec:
    """Anticommutation pattern of p against the generators, one bit per generator."""
    if p.n != code.n:
        raise DimensionMismatch(f"operator on {p.n} qubits, code on {code.n}")
    return BitVec(code.n - code.k, code.syndrome_bits(p.x, p.z))


def logical_class(code: StabilizerCode, p: PauliOp) -> LogicalClass:
    """Class of an N(S) element; raises if p has a nonzero syndrome."""
    if p.n != code.n:
        raise DimensionMismatch(f"operator on {p.n} qubits, code on {code.n}")
    if code.syndrome_bits(p.x, p.z):
        raise ValueError(f"{render(p)} is not in N(S): nonzero syndrome")
    return LogicalClass(code.k, code.class_bits(p.x, p.z))


def validate_code(code: StabilizerCode) -> Diagnostics:
    """Check commutation, independence, and the logical pairing relations."""
    diag = Diagnostics()
    gens = code.generators
    for i, j in combinations(range(len(gens)), 2):
        if symplectic_product(gens[i], gens[j]):
            diag.add(f"generators {i} and {j} anticommute")
    if code._gen_rref.rank < len(gens):
        diag.add(f"generators dependent: rank {code._gen_rref.rank} < {len(gens)}")
    for name, ops in (("X", code.logical_x), ("Z", code.logical_z)):
        for i, op in enumerate(ops):
            s = code.syndrome_bits(op.x, op.z)
            if s:
                diag.add(f"logical {name}{i + 1} anticommutes with generator "
                         f"{(s & -s).bit_length() - 1}")
    for i in range(code.k):
        for j in range(code.k):
            want = 1 if i == j else 0
            if symplectic_product(code.logical_x[i], code.logical_z[j]) != want:
                diag.add(f"bad pairing: X{i + 1} vs Z{j + 1} (expected "
                         f"{'anti' if want else ''}commuting)")
            if j > i:
                if symplectic_product(code.logical_x[i], code.logical_x[j]):
                    diag.add(f"logical X{i + 1} and X{j + 1} anticommute")
                if symplectic_product(code.logical_z[i], code.logical_z[j]):
                    diag.add(f"logical Z{i + 1} and Z{j + 1} anticommute")
    return diag


# -- symplectic basis completion ----------------------------------------------


def complete_logical_basis(
    generators: list[PauliOp],
    seed_x: list[PauliOp] | None = None,
    seed_z: list[PauliOp] | None = None,
    n: int | None = None,
) -> tuple[list[PauliOp], list[PauliOp]]:
    """Extend seeds to a full logical basis (X_i, Z_i) for the given stabilizer.

    Seeds must commute with the generators and among themselves, and be
    independent modulo the stabilizer; seed_z[i] is taken as the partner of
    seed_x[i] when both are given. Deterministic for fixed inputs.
    """
    seed_x = list(seed_x or [])
    seed_z = list(seed_z or [])
    if seed_z and len(seed_z) != len(seed_x):
        raise CodeConstructionError("seed_z must pair one-to-one with seed_x")
    if n is None:
        if not generators and not seed_x:
            raise CodeConstructionError("cannot infer the qubit count: pass n")
        n = (generators or seed_x)[0].n
    k = n - len(generators)
    if len(seed_x) > k:
        raise CodeConstructionError(f"more seeds than logical qubits (k={k})")

    gen_rows = rref(BitMatrix(tuple(_sym_vec(g) for g in generators), 2 * n))
    if gen_rows.rank < len(generators):
        raise CodeConstructionError("generators are dependent")
    kern = kernel_basis(BitMatrix(tuple(_sym_twist(g) for g in generators), 2 * n))
    xmask = (1 << n) - 1

    def sympl(u: int, v: int) -> int:
        return parity((u & xmask) & (v >> n)) ^ parity((u >> n) & (v & xmask))

    gen_twists = [_sym_twist(g) for g in generators]
    xs = [_sym_vec(p) for p in seed_x]
    zs = [_sym_vec(p) for p in seed_z]
    for v in xs + zs:
        if any(parity(t & v) for t in gen_twists):
            raise CodeConstructionError("seed operator is outside N(S)")
    for i, j in combinations(range(len(xs)), 2):
        if sympl(xs[i], xs[j]):
            raise CodeConstructionError(f"seed X operators {i} and {j} anticommute")
    for i in range(len(zs)):
        for j in range(len(xs)):
            if sympl(xs[j], zs[i]) != (1 if i == j else 0):
                raise CodeConstructionError("seed X/Z pairing violated")
        for j in range(i):
            if sympl(zs[i], zs[j]):
                raise CodeConstructionError(f"seed Z operators {i} and {j} anticommute")
    seed_span = F2Span(gen_rows.reduced.rows)
    for v in xs + zs:
        if not seed_span.insert(v):
            raise CodeConstructionError("seed operators are dependent modulo the stabilizer")

    # Solve for missing Z partners: sympl(x_j, z_i) = delta_ij over the kernel,
    # then Gram-Schmidt z_i against earlier partners.
    for i in range(len(zs), len(xs)):
        constraint_rows = BitMatrix(
            tuple(
                sum(sympl(xs[j], kern.rows[m]) << m for m in range(kern.nrows))
                for j in range(len(xs))
            ),
            kern.nrows,
        )
        coeffs = solve(constraint_rows, BitVec(len(xs), 1 << i))
        if coeffs is None:
            raise CodeConstructionError("no symplectic partner for seed operator "
                                        f"{i}: seeds not independent in N(S)/S")
        z = 0
        for m in range(kern.nrows):
            if coeffs.get(m):
                z ^= kern.rows[m]
        for l in range(i):
            if sympl(z, zs[l]):
                z ^= xs[l]
        zs.append(z)

    # Remaining hyperbolic pairs, greedily from the kernel basis. Correcting a
    # candidate against the chosen pairs keeps it in their symplectic
    # complement; independence mod S then implies independence mod S+pairs.
    while len(xs) < k:
        span = F2Span(gen_rows.reduced.rows)
        pool = []
        for v in kern.rows:
            for x, z in zip(xs, zs):
                if sympl(v, z):
                    v ^= x
                if sympl(v, x):
                    v ^= z
            if span.insert(v):
                pool.append(v)
        if not pool:
            raise CodeConstructionError("cannot complete basis: kernel exhausted")
        a = pool[0]
        b = next((c for c in pool[1:] if sympl(a, c)), None)
        if b is None:
            raise CodeConstructionError("degenerate symplectic form on the quotient")
        xs.append(a)
        zs.append(b)

    return [_unpack(v, n) for v in xs], [_unpack(v, n) for v in zs]


def standard_form(generators: list[PauliOp]) -> StabilizerCode:
    """Canonicalize generators (RREF of the symplectic check matrix) and
    complete a valid logical basis. Deterministic for fixed input order."""
    if not generators:
        raise CodeConstructionError("no generators")
    n = generators[0].n
    for i, j in combinations(range(len(generators)), 2):
        if symplectic_product(generators[i], generators[j]):
            raise CodeConstructionError(f"generators {i} and {j} anticommute")
    red = rref(BitMatrix(tuple(_sym_vec(g) for g in generators), 2 * n))
    if red.rank < len(generators):
        raise CodeConstructionError("generators are dependent")
    canon = [_unpack(v, n) for v in red.reduced.rows[: red.rank]]
    xs, zs = complete_logical_basis(canon)
    return StabilizerCode(canon, xs, zs)


# -- minimum-weight searches ---------------------------------------------------


def min_weight_in_class(
    code: StabilizerCode,
    target: LogicalClass | int | None,
    cap: int,
    pure: str | None = None,
) -> DistanceResult:
    """Minimum weight over N(S) elements of the given class, or over all of
    N(S)\\S when target is None. `pure` restricts to X-only or Z-only errors."""
    if cap > code.n:
        cap = code.n
    if pure not in _PURE_LETTERS:
        raise ValueError("pure must be None, 'x', or 'z'")
    bits = target.bits if isinstance(target, LogicalClass) else target
    if bits == 0:
        return DistanceResult(0, True, cap)
    letters = _PURE_LETTERS[pure]
    n = code.n
    for w in range(1, cap + 1):
        for support in combinations(range(n), w):
            for assign in product(letters, repeat=w):
                x = z = 0
                for q, letter in zip(support, assign):
                    if letter != "Z":
                        x |= 1 << q
                    if letter != "X":
                        z |= 1 << q
                if code.syndrome_bits(x, z):
                    continue
                if bits is None:
                    if not code.in_stabilizer_bits(x, z):
                        return DistanceResult(w, True, cap)
                elif code.class_bits(x, z) == bits:
                    return DistanceResult(w, True, cap)
    return DistanceResult(cap + 1, False, cap)


def code_distance(code: StabilizerCode, cap: int) -> DistanceResult:
    """Minimum weight of an element of N(S)\\S, exact when <= cap."""
    return min_weight_in_class(code, None, cap)


# -- text format ----------------------------------------------------------------


def dumps(code: StabilizerCode) -> str:
    lines = [f"{code.n} {code.k}"]
    lines += [render(g) for g in code.generators]
    if code.k:
        lines.append("XL")
        lines += [render(p) for p in code.logical_x]
        lines.append("ZL")
        lines += [render(p) for p in code.logical_z]
    return "\n".join(lines) + "\n"


def loads(text: str) -> StabilizerCode:
    """Parse the code file format: 'n k', n-k generator lines, then optional
    XL / ZL sections of k lines each. '#' starts a comment line."""
    entries: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            entries.append((lineno, s))
    if not entries:
        raise ParseError("empty code file")
    lineno, header = entries[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n k'", line=lineno)
    try:
        n, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must contain two integers", line=lineno) from None
    if not 0 <= k <= n or n <= 0:
        raise ParseError(f"invalid parameters n={n}, k={k}", line=lineno)

    idx = 1
    gens: list[PauliOp] = []
    for _ in range(n - k):
        if idx >= len(entries):
            raise ParseError(f"expected {n - k} generator lines, found {len(gens)}")
        lineno, s = entries[idx]
        idx += 1
        p = parse_pauli(s, line=lineno)
        if p.n != n:
            raise ParseError(f"generator has {p.n} letters, expected {n}", line=lineno)
        gens.append(p)

    def read_section(tag: str) -> list[PauliOp] | None:
        nonlocal idx
        if idx < len(entries) and entries[idx][1].upper() == tag:
            idx += 1
            ops = []
            for _ in range(k):
                if idx >= len(entries):
                    raise ParseError(f"{tag} section needs {k} lines")
                lineno, s = entries[idx]
                idx += 1
                p = parse_pauli(s, line=lineno)
                if p.n != n:
                    raise ParseError(f"operator has {p.n} letters, expected {n}", line=lineno)
                ops.append(p)
            return ops
        return None

    xl = read_section("XL")
    zl = read_section("ZL")
    if idx < len(entries):
        raise ParseError("unexpected trailing content", line=entries[idx][0])

    if k == 0:
        return StabilizerCode(gens, [], [])
    if xl is not None and zl is not None:
        return StabilizerCode(gens, xl, zl)
    if zl is not None:
        # complete partners for the given Z operators, then swap roles back
        partners, seeds = complete_logical_basis(gens, seed_x=zl)
        return StabilizerCode(gens, seeds, partners)
    xs, zs = complete_logical_basis(gens, seed_x=xl or [])
    return StabilizerCode(gens, xs, zs)


def load_file(path) -> StabilizerCode:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dump_file(code: StabilizerCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(code))
