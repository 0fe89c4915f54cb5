"""cube chains between two vertices and the category they form

A cube chain of total dimension n from α to β is a sequence of cubes whose
corners glue lower-to-upper. A morphism from a finer chain a to a coarser
chain b splits every cube of b by an ordered partition of its axes; the j-th
block of the partition gives the axes along which the j-th fine cube runs.
"""
from collections import defaultdict
from dataclasses import dataclass
from itertools import product

import networkx as nx

from cube_paths.dpath import diagonal, moore_compose
from cube_paths.pcset import CellId, face_with, lower_corner, \
    one_skeleton_graph, upper_corner
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
class CompSeq:
    parts: tuple

    def __post_init__(self):
        if not self.parts or any(n < 1 for n in self.parts):
            raise ValueError("a composition needs positive parts")

    @property
    def total(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class CubeChain:
    cubes: tuple
    source: CellId
    target: CellId

    def __post_init__(self):
        if not self.cubes:
            raise ValueError("a cube chain has at least one cube")
        if any(c.dim < 1 for c in self.cubes):
            raise ValueError("cube chains are made of cubes of dim >= 1")

    @property
    def comp_seq(self):
        return CompSeq(tuple(c.dim for c in self.cubes))

    @property
    def total(self):
        return sum(c.dim for c in self.cubes)

    def to_list(self):
        return [list(c) for c in self.cubes]


def make_chain(K, cubes):
    """returns a CubeChain after checking the corner gluing"""
    cubes = tuple(CellId(*c) for c in cubes)
    if not cubes:
        raise ValueError("a cube chain has at least one cube")
    for a, b in zip(cubes, cubes[1:]):
        if upper_corner(K, a) != lower_corner(K, b):
            raise ValueError("cubes %s and %s do not meet at a corner" %
                             (tuple(a), tuple(b)))
    return CubeChain(cubes, lower_corner(K, cubes[0]),
                     upper_corner(K, cubes[-1]))


@dataclass(frozen=True)
class ChainMorphism:
    """source and target are object indices; partitions holds, for every
    cube of the target, an ordered partition of its axes 1..m"""
    source: int
    target: int
    partitions: tuple

    @property
    def is_identity(self):
        return all(len(p) == 1 for p in self.partitions)

    @property
    def is_generator(self):
        return sum(len(p) - 1 for p in self.partitions) == 1


def _cubes_by_lower_corner(K):
    starts = defaultdict(list)
    for n in range(1, K.dimension + 1):
        for c in K.cells(n):
            starts[lower_corner(K, c)].append((c, upper_corner(K, c)))
    return starts


def enumerate_chains(K, alpha, beta, n):
    """returns all cube chains of total dimension n from alpha to beta

    Only cubes whose upper corner can still reach beta along at most the
    remaining number of edges are explored."""
    alpha, beta = CellId(*alpha), CellId(*beta)
    if n < 1 or K.num_cells(0) == 0:
        return []
    graph = one_skeleton_graph(K)
    dist = nx.shortest_path_length(graph.reverse(copy=False),
                                   source=beta.index)
    if alpha.index not in dist or dist[alpha.index] > n:
        return []
    starts = _cubes_by_lower_corner(K)
    found = []

    def extend(vertex, remaining, cubes):
        if remaining == 0:
            if vertex == beta:
                found.append(CubeChain(tuple(cubes), alpha, beta))
            return
        for cube, upper in starts.get(vertex, ()):
            left = remaining - cube.dim
            if left < 0 or dist.get(upper.index, left + 1) > left:
                continue
            cubes.append(cube)
            extend(upper, left, cubes)
            cubes.pop()

    extend(alpha, n, [])
    return sorted(found, key=lambda ch: ch.cubes)


def ordered_set_partitions(axes):
    """yields every ordered partition of axes into non-empty blocks, each
    block a sorted tuple"""
    axes = tuple(axes)
    if not axes:
        yield ()
        return
    size = len(axes)
    for mask in range(1, 2 ** size):
        first = tuple(a for k, a in enumerate(axes) if mask >> k & 1)
        rest = tuple(a for k, a in enumerate(axes) if not mask >> k & 1)
        for tail in ordered_set_partitions(rest):
            yield (first,) + tail


def split_cube(K, cube, partition):
    """returns the fine cubes of cube determined by an ordered partition

    The j-th fine cube is the face of cube on which the axes of earlier
    blocks are 1 and those of later blocks are 0."""
    fine = []
    for j, block in enumerate(partition):
        fixed = {}
        for k, other in enumerate(partition):
            if k != j:
                for a in other:
                    fixed[a] = 1 if k < j else 0
        fine.append(face_with(K, cube, fixed))
    return fine


class ChainCategory:
    """the category Ch_{α,β}(K, n)

    objects are CubeChains, arrows the non-identity ChainMorphisms."""

    def __init__(self, K, alpha, beta, n, objects, arrows, duplicates=0):
        self.complex = K
        self.alpha = alpha
        self.beta = beta
        self.n = n
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.duplicates = duplicates
        self._arrow_index = {f: k for k, f in enumerate(self.arrows)}

    def __repr__(self):
        return "ChainCategory(n=%d, objects=%d, arrows=%d)" % (
            self.n, len(self.objects), len(self.arrows))

    def identity(self, obj):
        chain = self.objects[obj]
        return ChainMorphism(obj, obj, tuple(
            (tuple(range(1, c.dim + 1)),) for c in chain.cubes))

    def hom(self, a, b):
        """all morphisms a -> b, identity included"""
        homs = [f for f in self.arrows if f.source == a and f.target == b]
        if a == b:
            homs.insert(0, self.identity(a))
        return homs

    def arrow_index(self, f):
        return self._arrow_index[f]

    def out_arrows(self):
        """{object: [arrow index, ...]} for arrows leaving each object"""
        out = defaultdict(list)
        for k, f in enumerate(self.arrows):
            out[f.source].append(k)
        return out

    def graph(self):
        """underlying undirected networkx graph on object indices"""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.objects)))
        graph.add_edges_from((f.source, f.target) for f in self.arrows)
        return graph


def enumerate_morphisms(K, alpha, beta, n, objects=None):
    """returns the ChainCategory for (K, alpha, beta, n)

    Arrows are generated from their targets: every choice of ordered
    partitions of the target's cubes determines the source chain."""
    if objects is None:
        objects = enumerate_chains(K, alpha, beta, n)
    index = {ch.cubes: k for k, ch in enumerate(objects)}
    seen = set()
    duplicates = 0
    arrows = []
    for b, chain in enumerate(objects):
        choices = [list(ordered_set_partitions(range(1, c.dim + 1)))
                   for c in chain.cubes]
        for partitions in product(*choices):
            if all(len(p) == 1 for p in partitions):
                continue
            fine = []
            for cube, partition in zip(chain.cubes, partitions):
                fine.extend(split_cube(K, cube, partition))
            a = index.get(tuple(fine))
            assert a is not None, "split of %s is not a chain" % (chain,)
            f = ChainMorphism(a, b, tuple(partitions))
            if f in seen:
                duplicates += 1
                continue
            seen.add(f)
            arrows.append(f)
    arrows.sort(key=lambda f: (f.source, f.target, f.partitions))
    return ChainCategory(K, CellId(*alpha), CellId(*beta), n, objects,
                         arrows, duplicates)


def compose(C, f, g):
    """returns g ∘ f for f: a -> b and g: b -> c"""
    if f.target != g.source:
        raise ValueError("morphisms are not composable")
    parts = []
    offset = 0
    for outer in g.partitions:
        merged = []
        for block in outer:
            axes = sorted(block)
            for inner in f.partitions[offset]:
                merged.append(tuple(sorted(axes[a - 1] for a in inner)))
            offset += 1
        parts.append(tuple(merged))
    assert offset == len(f.partitions)
    h = ChainMorphism(f.source, g.target, tuple(parts))
    if not h.is_identity:
        assert h in C._arrow_index, "composite %s missing" % (h,)
    return h


def generators(C):
    """returns the arrows splitting exactly one cube into two"""
    return [f for f in C.arrows if f.is_generator]


def terminal_object(C):
    """returns the index of an object receiving exactly one morphism from
    every object, or None"""
    counts = defaultdict(lambda: defaultdict(int))
    for f in C.arrows:
        counts[f.target][f.source] += 1
    for t in range(len(C.objects)):
        if any(f.source == t for f in C.arrows):
            continue
        incoming = counts[t]
        if all(incoming.get(a, 0) == 1 for a in range(len(C.objects))
               if a != t):
            return t
    return None


def category_graph(C):
    """returns a JSON friendly dict of objects and labelled arrows"""
    objects = [dict(id=k, cubes=ch.to_list(), shape=list(ch.comp_seq.parts))
               for k, ch in enumerate(C.objects)]
    arrows = [dict(source=f.source, target=f.target,
                   partitions=[[list(b) for b in p] for p in f.partitions])
              for f in C.arrows]
    return dict(n=C.n, source=list(C.alpha), target=list(C.beta),
                objects=objects, arrows=arrows)


def realize_chain(K, chain):
    """returns the tame natural d-path running the diagonal of each cube"""
    path = diagonal(K, chain.cubes[0])
    for cube in chain.cubes[1:]:
        path = moore_compose(path, diagonal(K, cube))
    return path


def concat_chains(K, chain1, chain2):
    """returns the chain running chain1 then chain2"""
    if chain2 is None or chain1 is None:
        raise ValueError("cannot concatenate with an empty chain")
    if chain1.target != chain2.source:
        raise ValueError("chain ends at %s but the next starts at %s" %
                         (tuple(chain1.target), tuple(chain2.source)))
    return CubeChain(chain1.cubes + chain2.cubes, chain1.source,
                     chain2.target)


def reachable_lengths(K, alpha, beta):
    """returns the minimal total dimension of a chain from alpha to beta,
    None when beta is not reachable"""
    graph = one_skeleton_graph(K)
    try:
        return nx.shortest_path_length(graph, CellId(*alpha).index,
                                       CellId(*beta).index) or None
    except nx.NetworkXNoPath:
        return None


def length_range(K, alpha, beta, max_n=None, window=0):
    """returns the lengths n to analyse, possibly empty"""
    start = reachable_lengths(K, alpha, beta)
    if start is None:
        if alpha == beta and max_n:
            return list(range(1, max_n + 1))
        return []
    stop = max_n if max_n is not None else start + window
    return list(range(start, stop + 1))


def _component_count(n, K, alpha, beta):
    C = enumerate_morphisms(K, alpha, beta, n)
    if not C.objects:
        return n, 0
    return n, nx.number_connected_components(C.graph())


def path_space_components(K, alpha, beta, max_n=None, window=0, jobs=1):
    """returns [(n, components of Ch_{α,β}(K, n)), ...] for non-empty n"""
    lengths = length_range(K, alpha, beta, max_n, window)
    counts = map_jobs(_component_count, lengths, jobs, K=K, alpha=alpha,
                      beta=beta)
    return [(n, count) for n, count in counts if count]
