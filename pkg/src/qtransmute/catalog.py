"""Named code constructions with their canonical admissible sets.

Entries are addressed as "name" or "name:params" (e.g. toric:3, compact:4,
rep:5, eq16-lattice:4x4). Every entry carries a self-test block so the whole
golden suite is reachable from `catalog selftest`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .classical import asymmetric_distances, css17_classical_pair, css_build
from .errors import QTError
from .lattice import (compact_encoding, instantiate_torus, rate_half_cell,
                      rate_two_thirds_cell, toric_code)
from .pauli import PauliOp, enumerate_paulis, errors_up_to_weight, parse_pauli
from .qet import (AdmissibleSet, check_general_qet, effective_distance,
                  strong_conditions_hold)
from .stabilizer import (StabilizerCode, code_distance, complete_logical_basis,
                         min_weight_in_class, validate_code)

TABLE1_GENERATORS = ["XXYYZIZ", "IZXYYXY", "IIIIIZZ", "ZZIIZIZ", "ZZZZIII"]
TABLE1_LOGICAL_X = ["IXXIXII", "IIXXIIZ"]
TABLE1_LOGICAL_Z = ["ZZIIIII", "ZIIZIIZ"]

TABLE2_GENERATORS = ["YXZIXX", "ZIXXXX", "ZZZZII", "ZZIIZZ"]
TABLE2_LOGICAL_X = ["IXIXXI", "ZIZIIZ"]
TABLE2_LOGICAL_Z = ["ZZIIII", "IIIIXX"]

FIVE_QUBIT_GENERATORS = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


@dataclass(frozen=True)
class CatalogCode:
    name: str
    code: StabilizerCode
    admissible: AdmissibleSet | None = None
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    summary: str
    build: Callable[..., CatalogCode]
    selftest: Callable[[CatalogCode], list[tuple[str, bool, str]]]


def _paulis(strings: list[str]) -> list[PauliOp]:
    return [parse_pauli(s) for s in strings]


def table1_code() -> StabilizerCode:
    return StabilizerCode(_paulis(TABLE1_GENERATORS), _paulis(TABLE1_LOGICAL_X),
                          _paulis(TABLE1_LOGICAL_Z))


def table2_code() -> StabilizerCode:
    return StabilizerCode(_paulis(TABLE2_GENERATORS), _paulis(TABLE2_LOGICAL_X),
                          _paulis(TABLE2_LOGICAL_Z))


def five_qubit_code() -> StabilizerCode:
    return StabilizerCode(_paulis(FIVE_QUBIT_GENERATORS),
                          [parse_pauli("XXXXX")], [parse_pauli("ZZZZZ")])


def repetition_code(n: int) -> StabilizerCode:
    gens = []
    for i in range(n - 1):
        z = (1 << i) | (1 << (i + 1))
        gens.append(PauliOp(n, 0, z))
    return StabilizerCode(gens, [PauliOp(n, (1 << n) - 1, 0)], [PauliOp(n, 0, 1)])


def css17_code() -> StabilizerCode:
    """The [17,2] code, with the logical basis seeded so that logical X1 and
    X2 realize the weight-3 and weight-4 pure-X classes."""
    ca, cb = css17_classical_pair()
    base = css_build(ca, cb)

    def first_x_logical(wt: int) -> PauliOp:
        for support in combinations(range(17), wt):
            x = 0
            for q in support:
                x |= 1 << q
            if base.syndrome_bits(x, 0) == 0 and not base.in_stabilizer_bits(x, 0):
                return PauliOp(17, x, 0)
        raise QTError(f"no weight-{wt} pure-X logical found")

    seeds = [first_x_logical(3), first_x_logical(4)]
    xs, zs = complete_logical_basis(base.generators, seed_x=seeds)
    return base.with_logicals(xs, zs)


def _check(outcomes: list, name: str, ok: bool, info: str = "") -> None:
    outcomes.append((name, bool(ok), info))


def _build_table1(*_args) -> CatalogCode:
    code = table1_code()
    return CatalogCode("table1-7q", code, AdmissibleSet.group_generated(2, ["ZI"]))


def _selftest_table1(cc: CatalogCode):
    out = []
    code, adm = cc.code, cc.admissible
    _check(out, "validates", validate_code(code).ok)
    _check(out, "weight-1 errors all detected",
           all(code.syndrome_bits(p.x, p.z) for p in enumerate_paulis(7, 1)))
    d = effective_distance(code, adm, 2)
    _check(out, "effective distance 3", d.value == 3 and d.exact, str(d))
    return out


def _build_table2(*_args) -> CatalogCode:
    code = table2_code()
    return CatalogCode("table2-6q", code, AdmissibleSet.from_strings(2, ["ZI", "IZ"]))


def _selftest_table2(cc: CatalogCode):
    out = []
    code, adm = cc.code, cc.admissible
    errs = errors_up_to_weight(6, 1)
    _check(out, "validates", validate_code(code).ok)
    _check(out, "general conditions pass at weight 1",
           check_general_qet(code, adm, errs).passed)
    _check(out, "strong conditions fail (non-group separation)",
           not strong_conditions_hold(code, adm, errs))
    d = effective_distance(code, adm, 2)
    _check(out, "effective distance 3", d.value == 3 and d.exact, str(d))
    return out


def _build_css17(*_args) -> CatalogCode:
    code = css17_code()
    return CatalogCode("css17", code, AdmissibleSet.from_strings(2, ["XI", "IX"]))


def _selftest_css17(cc: CatalogCode):
    out = []
    code, adm = cc.code, cc.admissible
    _check(out, "validates", validate_code(code).ok)
    _check(out, "[17,2] parameters", (code.n, code.k) == (17, 2))
    dx, dz = asymmetric_distances(code, 6)
    _check(out, "asymmetric distances 3/5",
           (dx.value, dz.value) == (3, 5) and dx.exact and dz.exact, f"{dx}/{dz}")
    d = effective_distance(code, adm, 3)
    _check(out, "effective distance 5", d.value == 5 and d.exact, str(d))
    return out


def _build_eq16(arg: str | None = None) -> CatalogCode:
    lx, ly = _parse_dims(arg, default=(4, 4))
    cell = rate_two_thirds_cell()
    torus = instantiate_torus(cell, lx, ly)
    adm = AdmissibleSet.from_operators(torus.code, torus.translates(cell.logical_z[0]))
    return CatalogCode(f"eq16-lattice:{lx}x{ly}", torus.code, adm,
                       extras={"torus": torus, "cell": cell})


def _selftest_eq16(cc: CatalogCode):
    out = []
    code, adm = cc.code, cc.admissible
    _check(out, "validates", validate_code(code).ok)
    _check(out, "two logical qubits per cell",
           code.k == 2 * cc.extras["torus"].lx * cc.extras["torus"].ly, f"k={code.k}")
    d = effective_distance(code, adm, 2)
    _check(out, "effective distance 3", d.value == 3 and d.exact, str(d))
    return out


def _build_eq20(arg: str | None = None) -> CatalogCode:
    lx, ly = _parse_dims(arg, default=(4, 4))
    torus = instantiate_torus(rate_half_cell(), lx, ly)
    return CatalogCode(f"eq20-lattice:{lx}x{ly}", torus.code, AdmissibleSet.trivial(torus.code.k),
                       extras={"torus": torus})


def _selftest_eq20(cc: CatalogCode):
    out = []
    _check(out, "validates", validate_code(cc.code).ok)
    d = code_distance(cc.code, 3)
    _check(out, "distance 3", d.value == 3 and d.exact, str(d))
    return out


def _build_compact(arg: str | None = None) -> CatalogCode:
    length = int(arg) if arg else 4
    enc = compact_encoding(length)
    adm = AdmissibleSet.from_operators(
        enc.code, [PauliOp(enc.code.n, 0, 1 << q) for q in enc.vertex_qubits])
    return CatalogCode(f"compact:{length}", enc.code, adm, extras={"encoding": enc})


def _selftest_compact(cc: CatalogCode):
    out = []
    code, adm = cc.code, cc.admissible
    enc = cc.extras["encoding"]
    _check(out, "validates", validate_code(code).ok)
    _check(out, "vertex dephasing undetected",
           all(code.syndrome_bits(0, 1 << q) == 0 for q in enc.vertex_qubits))
    d = effective_distance(code, adm, 2)
    _check(out, "effective distance 3", d.value == 3 and d.exact, str(d))
    return out


def _build_toric(arg: str | None = None) -> CatalogCode:
    length = int(arg) if arg else 3
    code = toric_code(length)
    return CatalogCode(f"toric:{length}", code, AdmissibleSet.trivial(2),
                       extras={"length": length})


def _selftest_toric(cc: CatalogCode):
    out = []
    code = cc.code
    length = cc.extras["length"]
    _check(out, "validates", validate_code(code).ok)
    _check(out, "k = 2", code.k == 2)
    z1 = code.class_bits(code.logical_z[0].x, code.logical_z[0].z)
    d = min_weight_in_class(code, z1, length, pure="z")
    _check(out, "pure-Z weight of first cycle = L", d.value == length and d.exact, str(d))
    return out


def _build_rep(arg: str | None = None) -> CatalogCode:
    n = int(arg) if arg else 3
    if n < 2:
        raise QTError("repetition code needs n >= 2")
    return CatalogCode(f"rep:{n}", repetition_code(n),
                       AdmissibleSet.group_generated(1, ["Z"]))


def _selftest_rep(cc: CatalogCode):
    out = []
    code, adm = cc.code, cc.admissible
    n = code.n
    _check(out, "validates", validate_code(code).ok)
    if n % 2:
        d = effective_distance(code, adm, (n + 1) // 2)
        _check(out, "effective distance n", d.value == n and d.exact, str(d))
    return out


def _build_inner5(*_args) -> CatalogCode:
    return CatalogCode("inner-5q", five_qubit_code(), AdmissibleSet.trivial(1))


def _selftest_inner5(cc: CatalogCode):
    out = []
    code = cc.code
    _check(out, "validates", validate_code(code).ok)
    d = code_distance(code, 5)
    _check(out, "distance 3", d.value == 3 and d.exact, str(d))
    _check(out, "corrects single errors",
           check_general_qet(code, cc.admissible, errors_up_to_weight(5, 1)).passed)
    return out


def _parse_dims(arg: str | None, default: tuple[int, int]) -> tuple[int, int]:
    if not arg:
        return default
    sep = "x" if "x" in arg else ","
    parts = arg.split(sep)
    if len(parts) == 1:
        return int(parts[0]), int(parts[0])
    return int(parts[0]), int(parts[1])


ENTRIES: dict[str, CatalogEntry] = {
    "table1-7q": CatalogEntry(
        "table1-7q", "[7,2] code transmuting single-qubit errors to the phase group on one logical qubit",
        _build_table1, _selftest_table1),
    "table2-6q": CatalogEntry(
        "table2-6q", "[6,2] code with the non-group admissible set {I, Z1, Z2}",
        _build_table2, _selftest_table2),
    "css17": CatalogEntry(
        "css17", "[17,2,3/5] CSS code from the [17,9,5] QR code; weight-2 errors become single phase flips",
        _build_css17, _selftest_css17),
    "eq16-lattice": CatalogEntry(
        "eq16-lattice", "rate-2/3 translation-invariant code (params LxL, default 4x4)",
        _build_eq16, _selftest_eq16),
    "eq20-lattice": CatalogEntry(
        "eq20-lattice", "rate-1/2 single-error-correcting translation-invariant code (default 4x4)",
        _build_eq20, _selftest_eq20),
    "compact": CatalogEntry(
        "compact", "compact fermionic encoding on an LxL torus (param L, default 4)",
        _build_compact, _selftest_compact),
    "toric": CatalogEntry(
        "toric", "toric code on an LxL torus (param L, default 3)",
        _build_toric, _selftest_toric),
    "rep": CatalogEntry(
        "rep", "n-qubit repetition code with the phase-error admissible group (param n, default 3)",
        _build_rep, _selftest_rep),
    "inner-5q": CatalogEntry(
        "inner-5q", "the perfect [5,1,3] code (concatenation inner code)",
        _build_inner5, _selftest_inner5),
}


def names() -> list[str]:
    return list(ENTRIES)


def resolve(spec: str) -> CatalogCode:
    """Build a catalog code from 'name' or 'name:params'."""
    name, _, arg = spec.partition(":")
    if name not in ENTRIES:
        raise QTError(f"unknown catalog entry {name!r}; available: {', '.join(ENTRIES)}")
    return ENTRIES[name].build(arg or None)


def selftest(spec: str) -> list[tuple[str, bool, str]]:
    name = spec.partition(":")[0]
    cc = resolve(spec)
    return ENTRIES[name].selftest(cc)
