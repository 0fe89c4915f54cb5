"""precubical sets: cells, face maps, standard cubes, skeleta and canonical
points of the geometric realisation.

Cells are addressed positionally per dimension by CellId(dim, index). The
face ∂_i^α of an n-cube is stored for i = 1..n and α in {0, 1}."""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional

import networkx as nx

from cube_paths.util import Verdict

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"


class MalformedComplexError(ValueError):
    """face tables that reference missing cells or have the wrong shape"""

    def __init__(self, msg, cell=None):
        super().__init__(msg)
        self.cell = cell


class PcsFormatError(ValueError):
    """a .pcs document that cannot be turned into a complex"""

    def __init__(self, msg, line=None, column=None, cell=None):
        if line is not None:
            msg = "line %d, column %d: %s" % (line, column, msg)
        super().__init__(msg)
        self.line = line
        self.column = column
        self.cell = cell


class CellId(NamedTuple):
    dim: int
    index: int


@dataclass(frozen=True)
class Point:
    """canonical form of a point of |K|: a carrier and interior coordinates"""
    carrier: CellId
    coords: tuple

    @property
    def is_vertex(self):
        return self.carrier.dim == 0


@dataclass(frozen=True)
class ValidationReport:
    """outcome of checking the cubical relations

    A failed report names the first cell x and (i, j, α, β) with i < j for
    which ∂_i^α ∂_j^β x differs from ∂_{j-1}^β ∂_i^α x."""
    ok: bool
    cell: Optional[CellId] = None
    i: Optional[int] = None
    j: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    lhs: Optional[CellId] = None
    rhs: Optional[CellId] = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return ("cubical relation fails at cell %s: i=%d j=%d alpha=%d "
                "beta=%d (%s != %s)" % (tuple(self.cell), self.i, self.j,
                                        self.alpha, self.beta,
                                        tuple(self.lhs), tuple(self.rhs)))


@dataclass(frozen=True)
class PrecubicalSet:
    """a finite precubical set

    dims[n] is |K_n|. faces[n][k] is a tuple of n pairs; pair i-1 holds the
    indices in K_{n-1} of ∂_i^0 and ∂_i^1 of cell (n, k). labels[n][k] is a
    string or None. Trailing empty dimensions are dropped on construction."""
    dims: tuple
    faces: tuple
    labels: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        while dims and dims[-1] == 0:
            dims = dims[:-1]
        faces = tuple(tuple(tuple(tuple(pair) for pair in cell)
                            for cell in self.faces[n]) if n < len(self.faces)
                      else () for n in range(len(dims)))
        labels = tuple(tuple(self.labels[n]) if n < len(self.labels) and
                       self.labels[n] else (None,) * dims[n]
                       for n in range(len(dims)))
        for n, count in enumerate(dims):
            if count < 0:
                raise MalformedComplexError("negative cell count in dim %d" % n)
            if len(faces[n]) != count:
                raise MalformedComplexError(
                    "dim %d declares %d cells but has %d face entries" %
                    (n, count, len(faces[n])))
            if len(labels[n]) != count:
                raise MalformedComplexError(
                    "dim %d has %d labels for %d cells" %
                    (n, len(labels[n]), count))
            for index, cell in enumerate(faces[n]):
                if len(cell) != n or any(len(pair) != 2 for pair in cell):
                    raise MalformedComplexError(
                        "cell %s needs %d face pairs" % ((n, index), n),
                        cell=CellId(n, index))
        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'faces', faces)
        object.__setattr__(self, 'labels', labels)

    @property
    def dimension(self):
        """highest non-empty dimension, -1 for the empty complex"""
        return len(self.dims) - 1

    def num_cells(self, dim):
        return self.dims[dim] if 0 <= dim < len(self.dims) else 0

    def cells(self, dim=None):
        """CellIds of one dimension, or of all dimensions in order"""
        dims = range(len(self.dims)) if dim is None else [dim]
        for n in dims:
            for index in range(self.num_cells(n)):
                yield CellId(n, index)

    def vertices(self):
        return list(self.cells(0))

    def face(self, x, i, alpha):
        """returns ∂_i^alpha x"""
        dim, index = x
        if not 1 <= i <= dim:
            raise ValueError("axis %d out of range for a %d-cube" % (i, dim))
        return CellId(dim - 1, self.faces[dim][index][i - 1][alpha])

    def label(self, x):
        return self.labels[x.dim][x.index]

    def cell_by_label(self, label, dim=None):
        """returns the first cell carrying label"""
        for n in range(len(self.dims)) if dim is None else [dim]:
            if n < len(self.labels) and label in self.labels[n]:
                return CellId(n, self.labels[n].index(label))
        raise KeyError("no cell labelled %r" % label)


def empty_complex():
    return PrecubicalSet((), (), ())


def from_named_cells(cells):
    """returns a PrecubicalSet built from named cells

    Arguments:
        - cells: ordered mapping name -> sequence of (lower, upper) face names,
          one pair per axis; vertices map to an empty sequence. Faces must be
          named before the cells using them. Index order within a dimension
          is insertion order; names become labels.
    """
    position = {}
    dims, faces, labels = [], [], []
    for name, face_pairs in cells.items():
        n = len(face_pairs)
        while len(dims) <= n:
            dims.append(0)
            faces.append([])
            labels.append([])
        entry = []
        for lower, upper in face_pairs:
            try:
                entry.append((position[lower].index, position[upper].index))
            except KeyError as err:
                raise MalformedComplexError(
                    "cell %r uses undeclared face %s" % (name, err))
        position[name] = CellId(n, dims[n])
        dims[n] += 1
        faces[n].append(tuple(entry))
        labels[n].append(name)
    return PrecubicalSet(tuple(dims), tuple(tuple(f) for f in faces),
                         tuple(tuple(l) for l in labels))


def cube_words(n):
    """cells of □[n] as words over '01*', grouped by dimension

    A word with k stars is the k-cube whose free axes are the star positions;
    words are in lexicographic order with '0' < '1' < '*', so vertex w has
    index int(w, 2)."""
    by_dim = [[] for _ in range(n + 1)]
    for word in product('01*', repeat=n):
        word = ''.join(word)
        by_dim[word.count('*')].append(word)
    return by_dim


def word_face(word, i, alpha):
    """the word of ∂_i^alpha: the i-th star replaced by alpha"""
    stars = [p for p, c in enumerate(word) if c == '*']
    p = stars[i - 1]
    return word[:p] + str(alpha) + word[p + 1:]


def standard_cube(n):
    """returns □[n] with cells labelled by their '01*' words"""
    if n < 0:
        raise ValueError("n must be non-negative")
    cells = {}
    for words in cube_words(n):
        for word in words:
            k = word.count('*')
            cells[word] = [(word_face(word, i, 0), word_face(word, i, 1))
                           for i in range(1, k + 1)]
    return from_named_cells(cells)


def skeleton(K, n):
    """returns K_{<=n}"""
    if n < 0:
        raise ValueError("n must be non-negative")
    return PrecubicalSet(K.dims[:n + 1], K.faces[:n + 1], K.labels[:n + 1])


def boundary(n):
    """returns ∂□[n] = □[n]_{<=n-1}; ∂□[0] is empty"""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return empty_complex()
    return skeleton(standard_cube(n), n - 1)


def validate(K):
    """returns a ValidationReport for the cubical relations of K

    Raises MalformedComplexError when a face entry points outside the next
    lower dimension."""
    for n in range(1, len(K.dims)):
        lower = K.num_cells(n - 1)
        for index, cell in enumerate(K.faces[n]):
            for pair in cell:
                for face in pair:
                    if not 0 <= face < lower:
                        raise MalformedComplexError(
                            "cell %s has dangling face index %s" %
                            ((n, index), face), cell=CellId(n, index))

    for n in range(2, len(K.dims)):
        for x in K.cells(n):
            for j in range(2, n + 1):
                for i in range(1, j):
                    for alpha, beta in product((0, 1), repeat=2):
                        lhs = K.face(K.face(x, j, beta), i, alpha)
                        rhs = K.face(K.face(x, i, alpha), j - 1, beta)
                        if lhs != rhs:
                            return ValidationReport(False, x, i, j, alpha,
                                                    beta, lhs, rhs)
    return ValidationReport(True)


def iterated_face(K, x, axes, eps):
    """returns ∂^eps_A x = ∂^eps_{a_1} ... ∂^eps_{a_k} x for a_1 < ... < a_k"""
    axes = sorted(axes)
    if len(set(axes)) != len(axes) or \
            any(not 1 <= a <= x.dim for a in axes):
        raise ValueError("axes %s not a subset of 1..%d" % (axes, x.dim))
    for a in reversed(axes):
        x = K.face(x, a, eps)
    return x


def face_with(K, x, fixed):
    """returns the face of x with axis a set to fixed[a] for every key

    Axes are numbered 1..dim x in the numbering of x itself."""
    for a in sorted(fixed, reverse=True):
        x = K.face(x, a, fixed[a])
    return x


def lower_corner(K, x):
    return iterated_face(K, x, range(1, x.dim + 1), 0)


def upper_corner(K, x):
    return iterated_face(K, x, range(1, x.dim + 1), 1)


def canonicalize(K, carrier, coords):
    """returns the canonical Point of (carrier, coords)

    Every coordinate equal to 0 or 1 is absorbed by the matching face map,
    highest axis first so lower axis numbers are unaffected."""
    coords = [Fraction(v) for v in coords]
    if len(coords) != carrier.dim:
        raise ValueError("%d coordinates for a %d-cube" %
                         (len(coords), carrier.dim))
    if any(not 0 <= v <= 1 for v in coords):
        raise ValueError("coordinates %s outside the closed cube" %
                         [str(v) for v in coords])
    for p in range(len(coords) - 1, -1, -1):
        if coords[p] in (0, 1):
            carrier = K.face(carrier, p + 1, int(coords[p]))
            del coords[p]
    return Point(carrier, tuple(coords))


def subcomplex(K, cells):
    """returns (sub-complex generated by cells, {old CellId: new CellId})

    The closure under faces keeps the relative order of K's cells."""
    keep = set()
    pending = [CellId(*c) for c in cells]
    while pending:
        x = pending.pop()
        if x in keep:
            continue
        keep.add(x)
        for i in range(1, x.dim + 1):
            pending.append(K.face(x, i, 0))
            pending.append(K.face(x, i, 1))

    mapping = {}
    top = max((x.dim for x in keep), default=-1)
    dims = [0] * (top + 1)
    for x in sorted(keep):
        mapping[x] = CellId(x.dim, dims[x.dim])
        dims[x.dim] += 1

    faces = [[] for _ in dims]
    labels = [[] for _ in dims]
    for x in sorted(keep):
        faces[x.dim].append(tuple(
            (mapping[K.face(x, i, 0)].index, mapping[K.face(x, i, 1)].index)
            for i in range(1, x.dim + 1)))
        labels[x.dim].append(K.label(x))
    sub = PrecubicalSet(tuple(dims), tuple(tuple(f) for f in faces),
                        tuple(tuple(l) for l in labels))
    return sub, mapping


def one_skeleton_graph(K):
    """returns a networkx DiGraph on vertex indices, one arc per edge
    direction ∂_1^0 e -> ∂_1^1 e"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(K.num_cells(0)))
    for e in K.cells(1):
        graph.add_edge(K.face(e, 1, 0).index, K.face(e, 1, 1).index)
    return graph


def vertex_lookup(K, ref):
    """returns the vertex named by ref, a label or an integer index"""
    if isinstance(ref, CellId):
        ref = ref.index if ref.dim == 0 else None
    if ref is None:
        raise ValueError("not a vertex reference")
    labels = K.labels[0] if K.dims else ()
    if isinstance(ref, str) and ref in labels:
        return CellId(0, labels.index(ref))
    try:
        index = int(ref)
    except (TypeError, ValueError):
        raise ValueError("no vertex labelled %r" % ref)
    if not 0 <= index < K.num_cells(0):
        raise ValueError("vertex index %d out of range" % index)
    return CellId(0, index)


def write_pcs(K):
    """returns the .pcs JSON text for K"""
    faces = {str(n): [[list(pair) for pair in cell] for cell in K.faces[n]]
             for n in range(1, len(K.dims))}
    labels = {}
    for n, dim_labels in enumerate(K.labels):
        named = {str(i): l for i, l in enumerate(dim_labels) if l is not None}
        if named:
            labels[str(n)] = named
    data = dict(dims=list(K.dims), faces=faces, labels=labels)
    return json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n"


def _json_mapping(data, key):
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise PcsFormatError("'%s' must be an object keyed by dimension" %
                             key)
    for dim in value:
        if not dim.isdigit():
            raise PcsFormatError("'%s' key %r is not a dimension" %
                                 (key, dim))
    return value


def read_pcs(text):
    """returns the PrecubicalSet encoded by .pcs JSON text

    Structural problems raise PcsFormatError; the cubical relations are left
    to validate."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise PcsFormatError(err.msg, line=err.lineno, column=err.colno)

    if not isinstance(data, dict) or 'dims' not in data:
        raise PcsFormatError("missing 'dims'")
    dims = data['dims']
    if not isinstance(dims, list) or \
            any(not isinstance(n, int) or n < 0 for n in dims):
        raise PcsFormatError("'dims' must be a list of non-negative integers")

    raw_faces = _json_mapping(data, 'faces')
    faces = [tuple(() for _ in range(dims[0]))] if dims else []
    for n in range(1, len(dims)):
        entries = raw_faces.get(str(n), [])
        if not isinstance(entries, list):
            raise PcsFormatError("faces of dim %d must be a list" % n,
                                 cell=CellId(n, 0))
        if len(entries) != dims[n]:
            missing = CellId(n, min(len(entries), dims[n]))
            raise PcsFormatError(
                "dim %d declares %d cells but lists %d face entries; "
                "first unmatched cell %s" % (n, dims[n], len(entries),
                                             tuple(missing)), cell=missing)
        dim_faces = []
        for index, cell in enumerate(entries):
            cell_id = CellId(n, index)
            if not isinstance(cell, list) or len(cell) != n or \
                    any(not isinstance(p, list) or len(p) != 2 for p in cell):
                raise PcsFormatError("cell %s needs %d [lower, upper] pairs" %
                                     (tuple(cell_id), n), cell=cell_id)
            for pair in cell:
                for face in pair:
                    if not isinstance(face, int) or \
                            not 0 <= face < dims[n - 1]:
                        raise PcsFormatError(
                            "cell %s has face index %r outside dim %d" %
                            (tuple(cell_id), face, n - 1), cell=cell_id)
            dim_faces.append(tuple(tuple(p) for p in cell))
        faces.append(tuple(dim_faces))

    labels = [[None] * n for n in dims]
    for dim, named in _json_mapping(data, 'labels').items():
        if not isinstance(named, dict):
            raise PcsFormatError("labels of dim %s must be an object" % dim)
        for index, label in named.items():
            try:
                d, i = int(dim), int(index)
            except ValueError:
                raise PcsFormatError("label key %r/%r is not an integer" %
                                     (dim, index))
            if not (0 <= d < len(dims) and 0 <= i < dims[d]):
                raise PcsFormatError("label for missing cell %s" % ((d, i),))
            labels[d][i] = label
    return PrecubicalSet(tuple(dims), tuple(faces),
                         tuple(tuple(l) for l in labels))


def face_closed(K, cells):
    """returns a Verdict: do the given cells form a sub-presheaf of K"""
    cells = set(cells)
    for x in sorted(cells):
        for i in range(1, x.dim + 1):
            for alpha in (0, 1):
                if K.face(x, i, alpha) not in cells:
                    return Verdict(False, (x, i, alpha))
    return Verdict(True)
