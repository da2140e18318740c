"""Declarative surface spec files.

A spec is a small key = value text format (comments with '#', arrays in
brackets), deliberately diffable:

    type = prescription
    kappa0 = [1]
    kappa1 = [0, 0, 1]
    tau0 = [0]
    tau1 = [1]
    interval = [-0.5, 0.5]
    step = 0.001

Exactly one source variant must be present: a named builtin
(helicoid, helix-tangent-developable, cone, gallery:<label>), polynomial
coefficients for the base curve r(s) and director e(s), or an invariant
prescription (kappa0, kappa1, tau0, tau1).
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .curves import AnalyticCurve, BUILTIN_SURFACES
from .errors import SpecError
from .jets import polyval
from .reconstruct import (
    InvariantPrescription,
    gallery_prescription,
    integrate_frenet,
)

_POLY_KEYS = ("r_x", "r_y", "r_z", "e_x", "e_y", "e_z")
_PRESC_KEYS = ("kappa0", "kappa1", "tau0", "tau1")
_PARAM_KEYS = ("pitch", "radius", "half_angle")
_SCALAR_KEYS = ("samples", "step") + _PARAM_KEYS
_KNOWN_KEYS = {"type", "name", "interval"} | set(_POLY_KEYS) | set(_PRESC_KEYS) | set(_SCALAR_KEYS)


@dataclass
class SurfaceSpec:
    """Parsed surface definition plus the canonical text it came from."""

    kind: str
    name: str | None = None
    params: dict = field(default_factory=dict)
    poly: dict = field(default_factory=dict)
    prescription_coeffs: dict = field(default_factory=dict)
    interval: tuple | None = None
    samples: int = 257
    step: float = 1e-3

    # parsing -----------------------------------------------------------------

    @staticmethod
    def parse(text: str) -> "SurfaceSpec":
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            if "=" not in line:
                raise SpecError("expected 'key = value'", lineno, 1)
            key, _, val = line.partition("=")
            key = key.strip()
            col = raw.index("=") + 2
            if key not in _KNOWN_KEYS:
                raise SpecError(f"unknown key {key!r}", lineno, 1)
            if key in values:
                raise SpecError(f"duplicate key {key!r}", lineno, 1)
            values[key] = (_parse_value(val.strip(), lineno, col), lineno)
        return SurfaceSpec._from_values(values)

    @staticmethod
    def from_file(path) -> "SurfaceSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return SurfaceSpec.parse(fh.read())

    @staticmethod
    def _from_values(values):
        def take(key, default=None):
            return values.pop(key, (default, 0))[0]

        kind = take("type")
        if kind is None:
            raise SpecError("missing required key 'type'")
        if kind not in ("builtin", "polynomial", "prescription"):
            raise SpecError(f"type must be builtin, polynomial or prescription, got {kind!r}")
        spec = SurfaceSpec(kind=kind)
        spec.name = take("name")
        interval = take("interval")
        if interval is not None:
            if not (isinstance(interval, list) and len(interval) == 2):
                raise SpecError("interval must be a two-element array")
            if not interval[0] < interval[1]:
                raise SpecError(f"interval {interval} is empty")
            spec.interval = (float(interval[0]), float(interval[1]))
        spec.samples = int(take("samples", 257))
        spec.step = float(take("step", 1e-3))
        for key in _PARAM_KEYS:
            if key in values:
                spec.params[key] = float(take(key))
        for key in _POLY_KEYS:
            if key in values:
                spec.poly[key] = np.atleast_1d(np.asarray(take(key), dtype=float))
        for key in _PRESC_KEYS:
            if key in values:
                spec.prescription_coeffs[key] = np.atleast_1d(np.asarray(take(key), dtype=float))
        for key, (_, lineno) in values.items():
            raise SpecError(f"key {key!r} not consumed", lineno, 1)
        spec._validate()
        return spec

    def _validate(self):
        if self.kind == "builtin":
            if not self.name:
                raise SpecError("builtin spec needs 'name'")
            base = self.name.split(":", 1)[0]
            if base != "gallery" and self.name not in BUILTIN_SURFACES:
                known = ", ".join(sorted(BUILTIN_SURFACES) + ["gallery:<label>"])
                raise SpecError(f"unknown builtin {self.name!r} (known: {known})")
            if self.poly or self.prescription_coeffs:
                raise SpecError("builtin spec must not carry polynomial/prescription data")
        elif self.kind == "polynomial":
            missing = [k for k in _POLY_KEYS if k not in self.poly]
            if missing:
                raise SpecError(f"polynomial spec missing {missing}")
            if self.interval is None:
                raise SpecError("polynomial spec needs 'interval'")
            if self.prescription_coeffs:
                raise SpecError("polynomial spec must not carry prescription data")
        else:
            missing = [k for k in _PRESC_KEYS if k not in self.prescription_coeffs]
            if missing:
                raise SpecError(f"prescription spec missing {missing}")
            if self.interval is None:
                raise SpecError("prescription spec needs 'interval'")
            if self.poly:
                raise SpecError("prescription spec must not carry polynomial data")

    # serialization -------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"type = {self.kind}"]
        if self.name:
            lines.append(f"name = {self.name}")
        for key in _PARAM_KEYS:
            if key in self.params:
                lines.append(f"{key} = {_fmt(self.params[key])}")
        for key in _POLY_KEYS:
            if key in self.poly:
                lines.append(f"{key} = {_fmt_array(self.poly[key])}")
        for key in _PRESC_KEYS:
            if key in self.prescription_coeffs:
                lines.append(f"{key} = {_fmt_array(self.prescription_coeffs[key])}")
        if self.interval is not None:
            lines.append(f"interval = {_fmt_array(self.interval)}")
        lines.append(f"samples = {self.samples}")
        lines.append(f"step = {_fmt(self.step)}")
        return "\n".join(lines) + "\n"

    def sha256(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()

    # construction ----------------------------------------------------------------

    def build_curve(self, kappa1_shift=0.0):
        """Instantiate the curve; kappa1_shift deforms prescription-backed
        surfaces (prescription and gallery kinds) along the versal direction."""
        if self.kind == "builtin":
            if self.name.startswith("gallery:"):
                label = self.name.split(":", 1)[1]
                p = gallery_prescription(label)
                if self.interval is not None:
                    p = InvariantPrescription(p.kappa0, p.kappa1, p.tau0, p.tau1, self.interval)
                if kappa1_shift:
                    p = p.with_kappa1_shift(kappa1_shift)
                return integrate_frenet(p, step=self.step)
            if kappa1_shift:
                raise SpecError("kappa1 shift applies only to prescription-backed surfaces")
            factory = BUILTIN_SURFACES[self.name]
            kwargs = dict(self.params)
            if self.interval is not None:
                kwargs["interval"] = self.interval
            return factory(**kwargs)
        if self.kind == "polynomial":
            if kappa1_shift:
                raise SpecError("kappa1 shift applies only to prescription-backed surfaces")
            r_rows = [self.poly["r_x"], self.poly["r_y"], self.poly["r_z"]]
            e_rows = [self.poly["e_x"], self.poly["e_y"], self.poly["e_z"]]

            def base_fn(s):
                return tuple(polyval(row, s) for row in r_rows)

            def director_fn(s):
                return tuple(polyval(row, s) for row in e_rows)

            return AnalyticCurve.from_base_director(base_fn, director_fn, self.interval,
                                                    name="polynomial")
        p = InvariantPrescription.from_polynomials(
            self.prescription_coeffs["kappa0"],
            self.prescription_coeffs["kappa1"],
            self.prescription_coeffs["tau0"],
            self.prescription_coeffs["tau1"],
            self.interval,
        )
        if kappa1_shift:
            p = p.with_kappa1_shift(kappa1_shift)
        return integrate_frenet(p, step=self.step)


def _parse_value(text, lineno, col):
    if not text:
        raise SpecError("empty value", lineno, col)
    if text.startswith("["):
        if not text.endswith("]"):
            raise SpecError("unterminated array", lineno, col + len(text))
        inner = text[1:-1].strip()
        if not inner:
            raise SpecError("empty array", lineno, col)
        out = []
        for part in inner.split(","):
            out.append(_parse_number(part.strip(), lineno, col))
        return out
    try:
        return _parse_number(text, lineno, col)
    except SpecError:
        return text  # bare word (builtin name)


def _parse_number(text, lineno, col):
    try:
        return float(text)
    except ValueError:
        raise SpecError(f"expected a number, got {text!r}", lineno, col) from None


def _fmt(x):
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _fmt_array(arr):
    return "[" + ", ".join(_fmt(float(v)) for v in arr) + "]"


def gallery_spec_text(label) -> str:
    """Prescription-type spec text reproducing a gallery surface."""
    p = gallery_prescription(label)
    spec = SurfaceSpec(kind="prescription")
    spec.prescription_coeffs = {
        "kappa0": np.atleast_1d(p.kappa0.coeffs),
        "kappa1": np.atleast_1d(p.kappa1.coeffs),
        "tau0": np.atleast_1d(p.tau0.coeffs),
        "tau1": np.atleast_1d(p.tau1.coeffs),
    }
    spec.interval = p.interval
    return spec.to_text()
