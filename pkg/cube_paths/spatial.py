"""spatiality of precubical sets of dimension at most 3

A sub-complex A of ∂□[3] is in B_3 when it carries a natural d-path from
0_3 to 1_3 that meets no other vertex. Such a path moves through squares of
A, crossing from one square to the next through the interior of a shared
edge. K is spatial when no two distinct 3-cubes of K agree on some A in B_3.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import networkx as nx

from cube_paths.dpath import make_dpath
from cube_paths.pcset import boundary, cube_words, from_named_cells, \
    word_face
from cube_paths.util import Verdict

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"

BOTTOM, TOP = '000', '111'
HALF = Fraction(1, 2)


class NotASubcomplexError(ValueError):
    pass


@dataclass(frozen=True)
class BnWitness:
    """cells of A, the squares crossed in order and the crossing points"""
    cells: tuple
    squares: tuple
    crossings: tuple


@dataclass(frozen=True)
class SpatialVerdict:
    status: str
    witness: object = None
    dim: int = None

    def __bool__(self):
        return self.status == 'spatial'

    def __str__(self):
        if self.status == 'unsupported':
            return "unsupported(dim=%d)" % self.dim
        return self.status


def _boundary_words():
    return {w for words in cube_words(3)[:3] for w in words}


def _closure(words):
    closed = set()
    pending = list(words)
    while pending:
        w = pending.pop()
        if w in closed:
            continue
        closed.add(w)
        for i in range(1, w.count('*') + 1):
            pending.extend((word_face(w, i, 0), word_face(w, i, 1)))
    return closed


def check_subcomplex(words):
    """returns the cells as a frozenset, raising NotASubcomplexError unless
    they form a face-closed subset of ∂□[3]"""
    words = frozenset(words)
    outside = sorted(words - _boundary_words())
    if outside:
        raise NotASubcomplexError("%s not cells of the boundary of the "
                                  "3-cube" % outside)
    missing = sorted(_closure(words) - words)
    if missing:
        raise NotASubcomplexError("not closed under faces, missing %s" %
                                  missing)
    return words


def _fixed(word):
    return {p: int(c) for p, c in enumerate(word) if c != '*'}


def _crossing(edge):
    """point in the interior of edge, free coordinate None"""
    return tuple(None if c == '*' else Fraction(int(c)) for c in edge)


def _monotone(lower, upper):
    """can lower <= upper hold with every free coordinate in (0, 1)"""
    for a, b in zip(lower, upper):
        if a is None and b is None:
            continue
        if a is None and b == 0:
            return False
        if b is None and a == 1:
            return False
        if a is not None and b is not None and a > b:
            return False
    return True


def _schema_crossings(squares):
    """returns the crossing points of a square sequence when a monotone
    vertex avoiding path through it exists, else None

    Every constraint compares a free coordinate with another or with 0 or 1,
    so setting all free coordinates to 1/2 decides the system exactly."""
    points = [tuple(Fraction(0) for _ in range(3))]
    for s, t in zip(squares, squares[1:]):
        edge = ''.join(a if a == b else (a if b == '*' else b)
                       for a, b in zip(s, t))
        points.append(_crossing(edge))
    points.append(tuple(Fraction(1) for _ in range(3)))
    for lower, upper in zip(points, points[1:]):
        if not _monotone(lower, upper):
            return None
    return tuple(tuple(HALF if v is None else v for v in p)
                 for p in points[1:-1])


def _square_graph(words):
    squares = sorted(w for w in words if w.count('*') == 2)
    graph = nx.Graph()
    graph.add_nodes_from(squares)
    for k, s in enumerate(squares):
        for t in squares[k + 1:]:
            (p, a), = _fixed(s).items()
            (q, b), = _fixed(t).items()
            if p != q:
                graph.add_edge(s, t)
    return graph


def _schemas(words):
    """yields feasible square sequences of A with their crossing points"""
    graph = _square_graph(words)
    lower = [s for s in graph if '0' in s]
    upper = [s for s in graph if '1' in s]
    for s in lower:
        for t in upper:
            for squares in nx.all_simple_paths(graph, s, t):
                crossings = _schema_crossings(squares)
                if crossings is not None:
                    yield tuple(squares), crossings


def is_in_B3(words):
    """returns a Verdict for membership of A in B_3, with a BnWitness"""
    words = check_subcomplex(words)
    if BOTTOM not in words or TOP not in words:
        return Verdict(False)
    for squares, crossings in _schemas(words):
        witness = BnWitness(tuple(sorted(words)), squares, crossings)
        return Verdict(True, witness)
    return Verdict(False)


def witness_path(witness):
    """returns the witness as a d-path in ∂□[3]"""
    K = boundary(3)
    points = (tuple(Fraction(0) for _ in range(3)),) + witness.crossings + \
        (tuple(Fraction(1) for _ in range(3)),)
    segments = []
    for square, start, end in zip(witness.squares, points, points[1:]):
        free = [p for p, c in enumerate(square) if c == '*']
        x0 = tuple(start[p] for p in free)
        x1 = tuple(end[p] for p in free)
        length = sum(b - a for a, b in zip(x0, x1))
        segments.append((K.cell_by_label(square), [(0, x0), (length, x1)]))
    return make_dpath(K, segments)


@lru_cache(maxsize=None)
def minimal_b3():
    """returns the inclusion-minimal members of B_3 as sorted word tuples"""
    members = set()
    for squares, _ in _schemas(_boundary_words()):
        members.add(frozenset(_closure(squares)))
    minimal = [a for a in members
               if not any(b < a for b in members)]
    return tuple(sorted(tuple(sorted(a)) for a in minimal))


def cell_image(K, cube, word):
    """returns the cell of K that cube maps the □[3] cell word to"""
    x = cube
    for p in range(len(word) - 1, -1, -1):
        if word[p] != '*':
            x = K.face(x, p + 1, int(word[p]))
    return x


def restriction(K, cube, words):
    """returns the images in K of the cells words under cube"""
    return tuple(cell_image(K, cube, w) for w in words)


def is_spatial(K):
    """returns a SpatialVerdict for K"""
    if K.dimension <= 2:
        return SpatialVerdict('spatial', dim=K.dimension)
    if K.dimension > 3:
        return SpatialVerdict('unsupported', dim=K.dimension)
    for words in minimal_b3():
        seen = {}
        for cube in K.cells(3):
            key = restriction(K, cube, words)
            if key in seen:
                return SpatialVerdict('not-spatial',
                                      (seen[key], cube, words), dim=3)
            seen[key] = cube
    return SpatialVerdict('spatial', dim=3)


def verify_witness(K, witness):
    """True when the two cubes differ and agree on every cell of A"""
    first, second, words = witness
    return first != second and \
        restriction(K, first, words) == restriction(K, second, words)


def double_along(words):
    """returns □[3] ⊔_A □[3]: two cubes glued along the cells of A"""
    words = check_subcomplex(words)
    cells = {}
    for prefix in ('a', 'b'):
        for dim_words in cube_words(3):
            for w in dim_words:
                if prefix == 'b' and w in words:
                    continue
                cells[prefix + ':' + w] = [
                    (_glued_name(word_face(w, i, 0), words, prefix),
                     _glued_name(word_face(w, i, 1), words, prefix))
                    for i in range(1, w.count('*') + 1)]
    return from_named_cells(cells)


def _glued_name(word, shared, prefix):
    return 'a:' + word if word in shared else prefix + ':' + word


def permute_axes(words, perm):
    """returns the words with coordinate p moved to perm[p]"""
    result = []
    for w in words:
        out = [''] * len(w)
        for p, c in enumerate(w):
            out[perm[p]] = c
        result.append(''.join(out))
    return frozenset(result)
