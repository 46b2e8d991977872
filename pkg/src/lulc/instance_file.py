"""JSON instance files: a subspace basis, a quadratic form and optional 8th-root phases.

    {
      "n": 27, "d": 6,
      "basis": ["1000...", ...],          # d strings, position 1 leftmost
      "quadratic_terms": [[1, 2], ...],   # 1-based, i < j
      "linear_terms": [5, ...],           # optional
      "phase_exponents_octal": [3, ...],  # optional, c_j = exp(i pi e_j / 4)
      "meta": {...}                       # optional, free-form, ignored on read
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from lulc.f2core import BitVec, Subspace, rank_rows
from lulc.quadform import PhaseAssignment, QuadraticForm, normalize_linear
from lulc.qfpsolver import QfpInstance

KNOWN_KEYS = {"n", "d", "basis", "quadratic_terms", "linear_terms", "phase_exponents_octal", "meta"}


class InstanceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceFile:
    n: int
    d: int
    basis: tuple[str, ...]
    quadratic_terms: tuple[tuple[int, int], ...]
    linear_terms: tuple[int, ...] = ()
    phase_exponents_octal: tuple[int, ...] | None = None
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        _validate(self)

    @classmethod
    def from_dict(cls, data: Any) -> InstanceFile:
        if not isinstance(data, dict):
            raise InstanceFormatError("instance must be a JSON object")
        unknown = set(data) - KNOWN_KEYS
        if unknown:
            raise InstanceFormatError(f"unknown keys: {sorted(unknown)}")
        for key in ("n", "d", "basis", "quadratic_terms"):
            if key not in data:
                raise InstanceFormatError(f"missing key {key!r}")
        try:
            octal = data.get("phase_exponents_octal")
            return cls(
                n=_int(data["n"], "n"),
                d=_int(data["d"], "d"),
                basis=tuple(_str(b) for b in _list(data["basis"], "basis")),
                quadratic_terms=tuple(_pair(t) for t in _list(data["quadratic_terms"], "quadratic_terms")),
                linear_terms=tuple(_int(v, "linear term") for v in _list(data.get("linear_terms", []), "linear_terms")),
                phase_exponents_octal=None if octal is None else tuple(_int(v, "exponent") for v in _list(octal, "phase_exponents_octal")),
                meta=dict(data.get("meta", {})),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InstanceFormatError):
                raise
            raise InstanceFormatError(str(exc)) from exc

    @classmethod
    def loads(cls, text: str) -> InstanceFile:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | Path) -> InstanceFile:
        return cls.loads(Path(path).read_text())

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "n": self.n,
            "d": self.d,
            "basis": list(self.basis),
            "quadratic_terms": [list(t) for t in self.quadratic_terms],
        }
        if self.linear_terms:
            out["linear_terms"] = list(self.linear_terms)
        if self.phase_exponents_octal is not None:
            out["phase_exponents_octal"] = list(self.phase_exponents_octal)
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        # one term per line keeps diffs readable
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def subspace(self) -> Subspace:
        return Subspace.from_strs(self.basis)

    def quadratic_form(self) -> QuadraticForm:
        return QuadraticForm.from_terms(self.n, self.quadratic_terms, self.linear_terms)

    def phases(self) -> PhaseAssignment | None:
        if self.phase_exponents_octal is None:
            return None
        return PhaseAssignment.from_octal(self.phase_exponents_octal)

    def to_instance(self) -> tuple[QfpInstance, PhaseAssignment | None]:
        """Pure instance plus the witness re-expressed for the pure form."""
        pure, shift = normalize_linear(self.quadratic_form())
        inst = QfpInstance(self.subspace(), pure)
        witness = self.phases()
        if witness is not None:
            witness = witness - shift
        return inst, witness

    @classmethod
    def from_instance(cls, inst: QfpInstance, witness: PhaseAssignment | None = None, meta: dict | None = None) -> InstanceFile:
        octal = None
        if witness is not None:
            octal = witness.octal()
            if octal is None:
                raise ValueError("witness phases are not 8th roots of unity")
        return cls(
            n=inst.n,
            d=inst.d,
            basis=tuple(str(v) for v in inst.s.basis_vecs()),
            quadratic_terms=tuple(inst.q.sorted_edges()),
            phase_exponents_octal=octal,
            meta=meta or {},
        )


def _int(v: Any, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceFormatError(f"{what} must be an integer, got {v!r}")
    return v


def _str(v: Any) -> str:
    if not isinstance(v, str):
        raise InstanceFormatError(f"basis rows must be strings, got {v!r}")
    return v


def _list(v: Any, what: str) -> list:
    if not isinstance(v, list):
        raise InstanceFormatError(f"{what} must be a list")
    return v


def _pair(v: Any) -> tuple[int, int]:
    if not isinstance(v, list) or len(v) != 2:
        raise InstanceFormatError(f"quadratic term must be a pair, got {v!r}")
    return _int(v[0], "term index"), _int(v[1], "term index")


def _validate(f: InstanceFile) -> None:
    if f.n < 1:
        raise InstanceFormatError("n must be positive")
    if len(f.basis) != f.d:
        raise InstanceFormatError(f"d={f.d} but {len(f.basis)} basis rows")
    rows = []
    for row in f.basis:
        if len(row) != f.n or any(ch not in "01" for ch in row):
            raise InstanceFormatError(f"basis row {row!r} is not a 0/1 string of length {f.n}")
        rows.append(BitVec.from_str(row).bits)
    if rank_rows(rows) != f.d:
        raise InstanceFormatError("basis rows are linearly dependent")
    for i, j in f.quadratic_terms:
        if not 1 <= i < j <= f.n:
            raise InstanceFormatError(f"quadratic term [{i}, {j}] needs 1 <= i < j <= n")
    for i in f.linear_terms:
        if not 1 <= i <= f.n:
            raise InstanceFormatError(f"linear term {i} out of range")
    if f.phase_exponents_octal is not None:
        if len(f.phase_exponents_octal) != f.n:
            raise InstanceFormatError("need one phase exponent per position")
        if any(not 0 <= e < 8 for e in f.phase_exponents_octal):
            raise InstanceFormatError("phase exponents must lie in 0..7")
