"""nerve of a finite loop-free category and its homology

k-simplices are composable strings of k non-identity arrows; vertices are the
objects. Boundary matrices are integer numpy arrays; ranks and Smith normal
forms are taken exactly with sympy."""
from dataclasses import dataclass, field

import numpy
from sympy import Matrix, QQ, ZZ
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix

from cube_paths.chains import compose, enumerate_morphisms, length_range
from cube_paths.util import map_jobs

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"


@dataclass(frozen=True)
class NerveComplex:
    """simplices[0] holds 1-tuples of objects, simplices[k] for k >= 1
    holds k-tuples of arrow indices. truncated is True when longer
    composable strings exist than were built."""
    category: object = field(compare=False, repr=False)
    simplices: tuple
    truncated: bool = False

    @property
    def dimension(self):
        return len(self.simplices) - 1

    def counts(self):
        return [len(s) for s in self.simplices]


@dataclass(frozen=True)
class ChainComplexZ:
    """ranks[k] is the number of k-simplices; boundaries[k] maps
    k-chains to (k-1)-chains for k >= 1"""
    ranks: tuple
    boundaries: dict = field(compare=False)
    truncated: bool = False


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple
    torsion: tuple
    euler: int
    rational_fallback: tuple = ()


def nerve(C, max_dim=None):
    """returns the NerveComplex of C built through dimension max_dim"""
    simplices = [tuple((k,) for k in range(len(C.objects)))]
    if C.arrows and (max_dim is None or max_dim >= 1):
        simplices.append(tuple((k,) for k in range(len(C.arrows))))
    out = C.out_arrows()
    truncated = max_dim == 0 and bool(C.arrows)
    while len(simplices) > 1:
        if max_dim is not None and len(simplices) > max_dim:
            truncated = any(out.get(C.arrows[s[-1]].target)
                            for s in simplices[-1])
            break
        longer = tuple(s + (k,) for s in simplices[-1]
                       for k in out.get(C.arrows[s[-1]].target, ()))
        if not longer:
            break
        simplices.append(longer)
    return NerveComplex(C, tuple(simplices), truncated)


def simplex_faces(X, simplex, k):
    """returns [(sign, face), ...] of a k-simplex"""
    C = X.category
    if k == 1:
        f = C.arrows[simplex[0]]
        return [(1, (f.target,)), (-1, (f.source,))]
    faces = [(1, simplex[1:])]
    for i in range(1, k):
        f, g = C.arrows[simplex[i - 1]], C.arrows[simplex[i]]
        h = C.arrow_index(compose(C, f, g))
        faces.append(((-1) ** i, simplex[:i - 1] + (h,) + simplex[i + 1:]))
    faces.append(((-1) ** k, simplex[:-1]))
    return faces


def chain_complex(X):
    """returns the ChainComplexZ of X, checking ∂∘∂ = 0"""
    position = [{s: j for j, s in enumerate(dim)} for dim in X.simplices]
    boundaries = {}
    for k in range(1, len(X.simplices)):
        matrix = numpy.zeros((len(X.simplices[k - 1]), len(X.simplices[k])),
                             dtype=numpy.int64)
        for col, simplex in enumerate(X.simplices[k]):
            for sign, face in simplex_faces(X, simplex, k):
                matrix[position[k - 1][face], col] += sign
        boundaries[k] = matrix
    for k in range(2, len(X.simplices)):
        product = boundaries[k - 1] @ boundaries[k]
        if product.any():
            raise ValueError("boundary of boundary is not zero in dim %d" % k)
    return ChainComplexZ(tuple(X.counts()), boundaries, X.truncated)


def _rational_rank(matrix):
    if 0 in matrix.shape:
        return 0
    rows = [[ZZ(int(v)) for v in row] for row in matrix.tolist()]
    return DomainMatrix(rows, matrix.shape, ZZ).convert_to(QQ).rank()


def _integer_invariants(matrix):
    """returns (rank, torsion coefficients) from the Smith normal form"""
    if 0 in matrix.shape:
        return 0, ()
    snf = smith_normal_form(Matrix(matrix.tolist()), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diagonal if d]
    return len(nonzero), tuple(sorted(d for d in nonzero if d > 1))


def homology(X, coefficients='rational', snf_limit=40000):
    """returns HomologyResult for a ChainComplexZ

    Arguments:
        - coefficients: 'rational' for Betti numbers only, 'integer' to add
          torsion from Smith normal forms
        - snf_limit: matrices with more entries fall back to rational rank;
          the affected dimensions are listed in rational_fallback
    """
    if coefficients not in ('rational', 'integer'):
        raise ValueError("unknown coefficients %r" % coefficients)
    top = len(X.ranks) - 1
    ranks = {}
    torsion = {}
    fallback = []
    for k, matrix in X.boundaries.items():
        if coefficients == 'integer' and matrix.size <= snf_limit:
            ranks[k], torsion[k - 1] = _integer_invariants(matrix)
        else:
            ranks[k] = _rational_rank(matrix)
            if coefficients == 'integer':
                fallback.append(k - 1)
    report = top - 1 if X.truncated else top
    betti = [X.ranks[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
             for k in range(report + 1)]
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    tors = [torsion.get(k, ()) for k in range(report + 1)]
    while tors and not tors[-1]:
        tors.pop()
    tors = tuple(tors)
    euler = sum((-1) ** k * n for k, n in enumerate(X.ranks))
    return HomologyResult(tuple(betti), tors, euler, tuple(sorted(fallback)))


def euler_characteristic(X):
    """alternating count of simplices"""
    return sum((-1) ** k * len(s) for k, s in enumerate(X.simplices))


def write_sparse_triplets(complex_z):
    """returns boundary matrices as 'dim k rows r cols c' blocks of
    'row col value' lines"""
    lines = []
    for k in sorted(complex_z.boundaries):
        matrix = complex_z.boundaries[k]
        rows, cols = matrix.shape
        lines.append("dim %d rows %d cols %d" % (k, rows, cols))
        for r, c in zip(*numpy.nonzero(matrix)):
            lines.append("%d %d %d" % (r, c, matrix[r, c]))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LengthReport:
    """path-space summary for one L1 length"""
    n: int
    chains: int
    arrows: int
    simplices: tuple
    betti: tuple
    torsion: tuple
    euler: int
    duplicates: int = 0
    rational_fallback: tuple = ()
    complex_z: object = field(default=None, compare=False, repr=False)

    def to_dict(self):
        return dict(n=self.n, chains=self.chains, arrows=self.arrows,
                    simplices=list(self.simplices), betti=list(self.betti),
                    torsion=[list(t) for t in self.torsion],
                    euler=self.euler)


def length_report(n, K, alpha, beta, max_dim=None, coefficients='rational',
                  snf_limit=40000, keep_complex=False):
    """returns the LengthReport for Ch_{α,β}(K, n)"""
    C = enumerate_morphisms(K, alpha, beta, n)
    X = nerve(C, None if max_dim is None else max_dim + 1)
    complex_z = chain_complex(X)
    result = homology(complex_z, coefficients=coefficients,
                      snf_limit=snf_limit)
    if max_dim is not None:
        betti = result.betti[:max_dim + 1]
        torsion = result.torsion[:max_dim + 1]
    else:
        betti, torsion = result.betti, result.torsion
    return LengthReport(n, len(C.objects), len(C.arrows),
                        tuple(X.counts()), betti, torsion, result.euler,
                        C.duplicates, result.rational_fallback,
                        complex_z if keep_complex else None)


def path_space_report(K, alpha, beta, max_n=None, max_dim=None, window=0,
                      coefficients='rational', snf_limit=40000, jobs=1,
                      keep_complex=False):
    """returns LengthReports for every length with a non-empty category"""
    lengths = length_range(K, alpha, beta, max_n, window)
    reports = map_jobs(length_report, lengths, jobs, K=K, alpha=alpha,
                       beta=beta, max_dim=max_dim, coefficients=coefficients,
                       snf_limit=snf_limit, keep_complex=keep_complex)
    return [r for r in reports if r.chains]
