"""Category lists and the quantization map onto ``[n]``."""

from __future__ import annotations

from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from ..exceptions import RepresentationError


@dataclass(frozen=True)
class ClassMap:
    """Ordered categories ``c`` with the bijection ``phi : c -> [n]``.

    With ``affine=(scale, offset)`` the map is ``phi(c) = scale * c + offset``
    (for ``c = [1, 1.2, ..., 2]`` that is ``phi(c) = 5c - 5``); otherwise the
    position in ``categories`` is used as a lookup table.
    """

    categories: tuple[Hashable, ...]
    affine: tuple[float, float] | None = None
    _index: dict[Hashable, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        cats = tuple(self.categories)
        object.__setattr__(self, "categories", cats)
        if len(set(cats)) != len(cats):
            raise RepresentationError("Categories must be distinct")
        if len(cats) < 2:
            raise RepresentationError("A class map needs at least two categories")
        if self.affine is not None:
            images = sorted(self._affine_image(c) for c in cats)
            if images != list(range(len(cats))):
                raise RepresentationError(
                    f"Affine map {self.affine} is not a bijection onto [{len(cats)}]"
                )
            index = {c: self._affine_image(c) for c in cats}
        else:
            index = {c: i for i, c in enumerate(cats)}
        object.__setattr__(self, "_index", index)

    @classmethod
    def evenly_spaced(cls, start: float, step: float, n: int) -> ClassMap:
        """Real-valued classes ``start, start + step, ...`` with their affine ``phi``."""
        if step <= 0 or n < 2:
            raise ValueError("step must be positive and n at least 2")
        s, d = Fraction(str(start)), Fraction(str(step))
        cats = tuple(float(s + i * d) for i in range(n))
        return cls(cats, affine=(float(1 / d), float(-s / d)))

    @property
    def n(self) -> int:
        return len(self.categories)

    def _affine_image(self, c: Hashable) -> int:
        assert self.affine is not None
        scale, offset = self.affine
        raw = scale * float(c) + offset  # type: ignore[arg-type]
        image = round(raw)
        if abs(raw - image) > 1e-9:
            raise RepresentationError(f"phi({c!r}) = {raw} is not an integer")
        return image

    def phi(self, c: Hashable) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise RepresentationError(f"{c!r} is not a category") from None

    def phi_inverse(self, i: int) -> Hashable:
        if not 0 <= i < self.n:
            raise RepresentationError(f"Index {i} outside [0, {self.n})")
        if self.affine is None:
            return self.categories[i]
        scale, offset = self.affine
        target = (i - offset) / scale
        return min(self.categories, key=lambda c: abs(float(c) - target))  # type: ignore[arg-type]

    def values(self) -> Sequence[float]:
        """Numeric category values ordered by ``phi`` (for inner products)."""
        return [float(self.phi_inverse(i)) for i in range(self.n)]  # type: ignore[arg-type]
