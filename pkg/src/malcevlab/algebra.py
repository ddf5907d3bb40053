"""Finite-dimensional anticommutative algebras over the rationals.

An Algebra stores a sparse structure-constant table holding only the i < j
products; e_j e_i = -(e_i e_j) and e_i e_i = 0 are synthesized, never stored,
so anticommutativity cannot be broken by bad data.  Elements are dense
coefficient vectors.  All arithmetic is exact.

Algebras and bilinear forms are immutable after construction and all
operations here are pure functions, so concurrent read-only use is safe.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import Rational, format_rational, normalize, parse_rational


class DimensionMismatch(ValueError):
    def __init__(self, msg: str = "dimension mismatch"):
        super().__init__(msg)


class AlgebraFormatError(ValueError):
    """Raised on malformed algebra text files."""


class Element:
    """Dense coefficient vector over an algebra's basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(normalize(c) for c in coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Element") -> "Element":
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch()
        return Element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch()
        return Element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element([-a for a in self.coords])

    def scale(self, q: Rational) -> "Element":
        return Element([q * a for a in self.coords])

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(self.coords)

    def nonzero(self):
        """Iterate (index, coefficient) over nonzero coordinates."""
        return ((i, c) for i, c in enumerate(self.coords) if c)

    def sparse(self) -> dict:
        return {i: c for i, c in enumerate(self.coords) if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Element({list(self.coords)!r})"


def element_equal(u: Element, v: Element) -> bool:
    """Exact coordinatewise equality; rejects mismatched lengths."""
    if len(u.coords) != len(v.coords):
        raise DimensionMismatch()
    return u.coords == v.coords


class Algebra:
    """Anticommutative algebra given by structure constants.

    products maps (i, j) with i < j to {k: coefficient}; omitted pairs
    multiply to zero.  labels are the human-readable basis names used in
    reports and the text format.
    """

    def __init__(self, dim: int, labels=None, products=None, name: str = ""):
        if dim < 0:
            raise ValueError("dimension must be >= 0")
        self.dim = dim
        self.name = name
        if labels is None:
            labels = [f"e{i}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionMismatch("label count must equal dim")
        self.labels = list(labels)
        table: dict = {}
        if products:
            for (i, j), vec in products.items():
                if not (0 <= i < j < dim):
                    raise ValueError(f"structure constants need 0 <= i < j < dim, got ({i}, {j})")
                entries = {k: normalize(c) for k, c in vec.items() if c}
                for k in entries:
                    if not 0 <= k < dim:
                        raise ValueError(f"product coordinate {k} out of range")
                if entries:
                    table[(i, j)] = entries
        self._table = table
        # Both orientations, precomputed for the evaluation hot path.
        pairs: dict = {}
        for (i, j), vec in table.items():
            fwd = tuple(sorted(vec.items()))
            pairs[(i, j)] = fwd
            pairs[(j, i)] = tuple((k, -c) for k, c in fwd)
        self._pairs = pairs

    @property
    def table(self) -> dict:
        """The stored i < j structure constants (do not mutate)."""
        return self._table

    # -- primitive operations -------------------------------------------

    def zero(self) -> Element:
        return Element([0] * self.dim)

    def basis_element(self, i: int) -> Element:
        coords = [0] * self.dim
        coords[i] = 1
        return Element(coords)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coords) -> Element:
        e = Element(coords)
        if len(e) != self.dim:
            raise DimensionMismatch()
        return e

    def basis_product(self, i: int, j: int) -> dict:
        """Sparse product e_i e_j with anticommutativity synthesized."""
        cell = self._pairs.get((i, j))
        return dict(cell) if cell else {}

    def multiply_sparse(self, u: dict, v: dict) -> dict:
        """Product of sparse coefficient dicts; the engine's workhorse."""
        out: dict = {}
        pairs = self._pairs
        for i, a in u.items():
            for j, b in v.items():
                cell = pairs.get((i, j))
                if cell:
                    ab = a * b
                    for k, c in cell:
                        w = out.get(k)
                        if w is None:
                            out[k] = ab * c
                        else:
                            w = w + ab * c
                            if w:
                                out[k] = w
                            else:
                                del out[k]
        return out

    def _from_sparse(self, vec: dict) -> Element:
        coords = [0] * self.dim
        for k, c in vec.items():
            coords[k] = c
        return Element(coords)

    def multiply(self, u: Element, v: Element) -> Element:
        """Bilinear extension of the structure constants, exact."""
        if len(u.coords) != self.dim or len(v.coords) != self.dim:
            raise DimensionMismatch()
        return self._from_sparse(self.multiply_sparse(u.sparse(), v.sparse()))

    def jacobian(self, x: Element, y: Element, z: Element) -> Element:
        """J(x, y, z) = (xy)z + (yz)x + (zx)y."""
        return (
            self.multiply(self.multiply(x, y), z)
            + self.multiply(self.multiply(y, z), x)
            + self.multiply(self.multiply(z, x), y)
        )

    def is_integral(self) -> bool:
        """True when every structure constant is an integer."""
        return all(
            isinstance(c, int) for vec in self._table.values() for c in vec.values()
        )

    # -- formatting ------------------------------------------------------

    def format_element(self, e: Element, compact: bool = False) -> str:
        parts = []
        for i, c in e.nonzero():
            if c == 1:
                parts.append(("+", self.labels[i]))
            elif c == -1:
                parts.append(("-", self.labels[i]))
            else:
                sign = "+" if (c > 0) else "-"
                parts.append((sign, f"{format_rational(abs(c))}*{self.labels[i]}"))
        if not parts:
            return "0"
        sep = "" if compact else " "
        first_sign, first = parts[0]
        text = first if first_sign == "+" else f"-{first}"
        for sign, chunk in parts[1:]:
            text += f"{sep}{sign}{sep}{chunk}"
        return text

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"Algebra(dim={self.dim}{tag})"

    # -- text format -----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"dim {self.dim}"]
        for i, lab in enumerate(self.labels):
            lines.append(f"label {i} {lab}")
        for (i, j) in sorted(self._table):
            vec = self._table[(i, j)]
            entries = " ".join(f"{k}:{format_rational(c)}" for k, c in sorted(vec.items()))
            lines.append(f"sc {i} {j} -> {entries}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "Algebra":
        dim = None
        labels: dict[int, str] = {}
        products: dict = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            try:
                if fields[0] == "dim":
                    if dim is not None:
                        raise AlgebraFormatError(f"line {lineno}: duplicate dim")
                    dim = int(fields[1])
                elif fields[0] == "label":
                    if len(fields) != 3:
                        raise AlgebraFormatError(f"line {lineno}: label needs index and name")
                    labels[int(fields[1])] = fields[2]
                elif fields[0] == "sc":
                    if len(fields) < 5 or fields[3] != "->":
                        raise AlgebraFormatError(f"line {lineno}: expected 'sc i j -> k:c ...'")
                    i, j = int(fields[1]), int(fields[2])
                    if i >= j:
                        raise AlgebraFormatError(f"line {lineno}: structure constants require i < j")
                    if (i, j) in products:
                        raise AlgebraFormatError(f"line {lineno}: duplicate sc entry ({i}, {j})")
                    vec = {}
                    for chunk in fields[4:]:
                        k_text, _, c_text = chunk.partition(":")
                        k = int(k_text)
                        if k in vec:
                            raise AlgebraFormatError(f"line {lineno}: duplicate coordinate {k}")
                        vec[k] = parse_rational(c_text)
                    products[(i, j)] = vec
                else:
                    raise AlgebraFormatError(f"line {lineno}: unknown directive {fields[0]!r}")
            except AlgebraFormatError:
                raise
            except (ValueError, IndexError) as exc:
                raise AlgebraFormatError(f"line {lineno}: {exc}") from exc
        if dim is None:
            raise AlgebraFormatError("missing dim line")
        label_list = [labels.get(i, f"e{i}") for i in range(dim)]
        try:
            return cls(dim, label_list, products, name=name)
        except ValueError as exc:
            raise AlgebraFormatError(str(exc)) from exc

    @classmethod
    def load(cls, path, name: str = "") -> "Algebra":
        with open(path) as fh:
            return cls.from_text(fh.read(), name=name or str(path))


class BilinearForm:
    """Antisymmetric bilinear form; only i < j entries are stored, the
    rest are synthesized."""

    def __init__(self, dim: int, entries=None):
        self.dim = dim
        table: dict = {}
        for (i, j), c in (entries or {}).items():
            if not (0 <= i < j < dim):
                raise ValueError(f"form entries need 0 <= i < j < dim, got ({i}, {j})")
            c = normalize(c)
            if c:
                table[(i, j)] = c
        self.entries = table

    def pair(self, i: int, j: int) -> Rational:
        if i < j:
            return self.entries.get((i, j), 0)
        if i > j:
            return -self.entries.get((j, i), 0)
        return 0

    def evaluate(self, u: Element, v: Element) -> Rational:
        if len(u.coords) != self.dim or len(v.coords) != self.dim:
            raise DimensionMismatch()
        total: Rational = 0
        for i, a in u.nonzero():
            for j, b in v.nonzero():
                c = self.pair(i, j)
                if c:
                    total += a * b * c
        return normalize(Fraction(total)) if not isinstance(total, int) else total
