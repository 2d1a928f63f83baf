"""Finite-alphabet joint pmfs and Shannon quantities (all values in bits)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import cmi_bits, entropy_bits, mi_bits

MAX_ALPHABET = 64
MASS_TOL = 1e-10
NEG_INFO_TOL = 1e-9


class PMFValidationError(ValueError):
    """Raised when a pmf or alphabet violates its invariants."""


class InfoValueError(ArithmeticError):
    """Raised when an information quantity is more negative than float noise."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct symbol labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise PMFValidationError("alphabet must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise PMFValidationError("alphabet labels must be unique")
        if any(not lab for lab in self.labels):
            raise PMFValidationError("alphabet labels must be non-empty strings")
        if len(self.labels) > MAX_ALPHABET:
            raise PMFValidationError(
                f"alphabet size {len(self.labels)} exceeds cap {MAX_ALPHABET}")

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class InfoReport:
    """A named scalar information quantity in bits."""

    name: str
    value: float

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise InfoValueError(f"{self.name} is not finite: {self.value}")


def _default_alphabets(shape):
    return [Alphabet(tuple(str(i) for i in range(n))) for n in shape]


@dataclass(frozen=True)
class JointPMF:
    """Dense joint pmf over a product of 1 to 3 finite alphabets."""

    alphabets: tuple[Alphabet, ...]
    mass: np.ndarray
    support_eps: float = 1e-12

    def __post_init__(self):
        # arity 4 is admitted solely for extended-target checks (lockability)
        if not 1 <= len(self.alphabets) <= 4:
            raise PMFValidationError("arity must be between 1 and 4")
        if self.support_eps <= 0:
            raise PMFValidationError("support_eps must be positive")
        mass = np.asarray(self.mass, dtype=np.float64)
        if mass.shape != tuple(len(a) for a in self.alphabets):
            raise PMFValidationError(
                f"mass shape {mass.shape} does not match alphabet sizes")
        if mass.min() < -1e-12:
            raise PMFValidationError(f"negative mass entry: {mass.min()}")
        mass = np.where(mass < 0.0, 0.0, mass)
        total = mass.sum()
        if abs(total - 1.0) > MASS_TOL:
            raise PMFValidationError(f"mass sums to {total}, not 1")
        mass.flags.writeable = False
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "alphabets", tuple(self.alphabets))

    @property
    def arity(self) -> int:
        return len(self.alphabets)

    @property
    def shape(self):
        return self.mass.shape

    @classmethod
    def from_array(cls, mass, labels=None, support_eps=1e-12) -> "JointPMF":
        """Build from a dense array; labels default to stringified indices."""
        mass = np.asarray(mass, dtype=np.float64)
        if labels is None:
            alphabets = _default_alphabets(mass.shape)
        else:
            alphabets = [a if isinstance(a, Alphabet) else Alphabet(tuple(a))
                         for a in labels]
        return cls(tuple(alphabets), mass, support_eps)

    def support(self):
        """Index tuples of all cells with mass above support_eps."""
        return list(zip(*np.where(self.mass > self.support_eps)))


def clamp_info(value: float, name: str = "information") -> float:
    """Clamp float noise in [-1e-9, 0) to 0; anything more negative is a bug."""
    if value < -NEG_INFO_TOL:
        raise InfoValueError(f"{name} = {value} is negative beyond tolerance")
    return 0.0 if value < 0.0 else float(value)


def entropy(p: JointPMF) -> float:
    """H(X) in bits for a single-variable pmf."""
    if p.arity != 1:
        raise PMFValidationError("entropy expects a single-variable pmf")
    return clamp_info(float(entropy_bits(p.mass)), "entropy")


def joint_entropy(p: JointPMF) -> float:
    """H of the full joint, any arity."""
    return clamp_info(float(entropy_bits(p.mass)), "joint entropy")


def marginalize(p: JointPMF, keep) -> JointPMF:
    """Sum out all axes not in keep (an iterable of variable indices)."""
    keep = sorted(set(keep))
    if not keep:
        raise PMFValidationError("keep set must be non-empty")
    if any(k < 0 or k >= p.arity for k in keep):
        raise PMFValidationError(f"keep indices {keep} out of range for arity {p.arity}")
    drop = tuple(i for i in range(p.arity) if i not in keep)
    mass = p.mass.sum(axis=drop) if drop else p.mass.copy()
    return JointPMF(tuple(p.alphabets[k] for k in keep), mass, p.support_eps)


def condition(p: JointPMF, on: int, value: str) -> JointPMF:
    """Slice on variable `on` taking symbol `value`, renormalized."""
    if not 0 <= on < p.arity:
        raise PMFValidationError(f"variable index {on} out of range")
    if p.arity == 1:
        raise PMFValidationError("cannot condition a single-variable pmf")
    idx = p.alphabets[on].index(value)
    sl = [slice(None)] * p.arity
    sl[on] = idx
    slice_mass = p.mass[tuple(sl)]
    total = slice_mass.sum()
    if total <= p.support_eps:
        raise PMFValidationError(
            f"conditioning event {value!r} has zero mass")
    rest = tuple(a for i, a in enumerate(p.alphabets) if i != on)
    return JointPMF(rest, slice_mass / total, p.support_eps)


def mutual_information(p: JointPMF) -> float:
    """I(X;Y) in bits for a two-variable pmf."""
    if p.arity != 2:
        raise PMFValidationError("mutual_information expects a two-variable pmf")
    return clamp_info(float(mi_bits(p.mass)), "mutual information")


def conditional_mutual_information(p: JointPMF) -> float:
    """I(A;B|C) in bits for a three-variable pmf indexed (A, B, C)."""
    if p.arity != 3:
        raise PMFValidationError(
            "conditional_mutual_information expects a three-variable pmf")
    return clamp_info(float(cmi_bits(p.mass)), "conditional mutual information")


# ---------------------------------------------------------------------------
# Joint pmf text format: one record per line, symbol labels then a probability;
# '#' starts a comment; unlisted cells are zero; arity inferred from columns.
# ---------------------------------------------------------------------------

def parse_pmf_text(text: str, support_eps: float = 1e-12) -> JointPMF:
    records = []
    arity = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise PMFValidationError(f"line {lineno}: need labels and a probability")
        if arity is None:
            arity = len(parts) - 1
        elif len(parts) - 1 != arity:
            raise PMFValidationError(
                f"line {lineno}: expected {arity} labels, got {len(parts) - 1}")
        try:
            prob = float(parts[-1])
        except ValueError:
            raise PMFValidationError(
                f"line {lineno}: bad probability {parts[-1]!r}") from None
        records.append((tuple(parts[:-1]), prob, lineno))
    if not records:
        raise PMFValidationError("no pmf records found")

    # Alphabets in order of first appearance, per axis.
    label_lists: list[list[str]] = [[] for _ in range(arity)]
    for labs, _, _ in records:
        for k, lab in enumerate(labs):
            if lab not in label_lists[k]:
                label_lists[k].append(lab)
    alphabets = tuple(Alphabet(tuple(ls)) for ls in label_lists)
    mass = np.zeros(tuple(len(a) for a in alphabets))
    seen = set()
    for labs, prob, lineno in records:
        idx = tuple(alphabets[k].index(lab) for k, lab in enumerate(labs))
        if idx in seen:
            raise PMFValidationError(f"line {lineno}: duplicate cell {labs}")
        seen.add(idx)
        mass[idx] = prob
    return JointPMF(alphabets, mass, support_eps)


def format_pmf(p: JointPMF) -> str:
    """Serialize to the text format; zero cells are omitted; stable order."""
    lines = []
    for idx in np.ndindex(*p.shape):
        v = p.mass[idx]
        if v > 0.0:
            labs = " ".join(p.alphabets[k].labels[i] for k, i in enumerate(idx))
            lines.append(f"{labs} {float(v)!r}")
    return "\n".join(lines) + "\n"


def load_pmf(path, support_eps: float = 1e-12) -> JointPMF:
    with open(path, encoding="utf-8") as fh:
        return parse_pmf_text(fh.read(), support_eps)


def dump_pmf(p: JointPMF, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pmf(p))
