"""exact Moore d-paths in a precubical set

A DPath is a sequence of segments. Each segment is carried by a cube of K and
follows a piecewise-linear, coordinatewise nondecreasing track given by
rational breakpoints. Paths are stored in a normal form (no collinear interior
breakpoints, no split between same-carrier pieces that meet at equal
coordinates) so equality of paths is equality of data."""
import json
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from cube_paths.pcset import CellId, PrecubicalSet, canonicalize
from cube_paths.util import Verdict, frac_to_str, str_to_frac

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"


class InvalidDPathError(ValueError):
    pass


class EndpointMismatchError(ValueError):
    def __init__(self, end, start):
        super().__init__("end point %s does not match start point %s" %
                         (_point_str(end), _point_str(start)))
        self.end = end
        self.start = start


class NotRegularError(ValueError):
    def __init__(self, interval):
        a, b = interval
        super().__init__("path has a stop interval [%s, %s]" %
                         (frac_to_str(a), frac_to_str(b)))
        self.interval = interval


class NaturalizationError(ValueError):
    pass


class DPathFormatError(ValueError):
    pass


def _point_str(point):
    return "%s%s" % (tuple(point.carrier),
                     tuple(frac_to_str(v) for v in point.coords))


def d1(x, y):
    """returns the L1 distance between two coordinate tuples"""
    if len(x) != len(y):
        raise ValueError("dimension mismatch: %d != %d" % (len(x), len(y)))
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(x, y)),
               Fraction(0))


def _collinear(p0, p1, p2):
    (t0, x0), (t1, x1), (t2, x2) = p0, p1, p2
    return all((b - a) * (t2 - t1) == (c - b) * (t1 - t0)
               for a, b, c in zip(x0, x1, x2))


def _drop_collinear(points):
    """removes interior points lying on the line through their neighbours"""
    result = [points[0]]
    for k in range(1, len(points) - 1):
        if not _collinear(result[-1], points[k], points[k + 1]):
            result.append(points[k])
    result.append(points[-1])
    return result


@dataclass(frozen=True)
class Segment:
    """one cube factor [c; γ] of a path, in local time [0, length]"""
    carrier: CellId
    breaks: tuple

    @property
    def length(self):
        return self.breaks[-1][0]

    @property
    def start(self):
        return self.breaks[0][1]

    @property
    def end(self):
        return self.breaks[-1][1]

    def at(self, t):
        """coordinates at local time t"""
        times = [b[0] for b in self.breaks]
        if not 0 <= t <= times[-1]:
            raise ValueError("time %s outside [0, %s]" % (t, times[-1]))
        k = min(bisect_right(times, t), len(times) - 1)
        (t0, x0), (t1, x1) = self.breaks[k - 1], self.breaks[k]
        w = (t - t0) / (t1 - t0)
        return tuple(a + w * (b - a) for a, b in zip(x0, x1))


def make_segment(carrier, breaks):
    """returns a Segment after checking its track

    Arguments:
        - carrier: CellId of dimension >= 1
        - breaks: sequence of (t, coords) with t_0 = 0 and t strictly
          increasing; coordinates in [0, 1] and nondecreasing
    """
    carrier = CellId(*carrier)
    if carrier.dim < 1:
        raise InvalidDPathError("carrier %s is a vertex" % (tuple(carrier),))
    points = []
    for t, coords in breaks:
        coords = tuple(Fraction(v) for v in coords)
        if len(coords) != carrier.dim:
            raise InvalidDPathError("%d coordinates for a %d-cube" %
                                    (len(coords), carrier.dim))
        if any(not 0 <= v <= 1 for v in coords):
            raise InvalidDPathError("coordinates leave the cube")
        points.append((Fraction(t), coords))
    if len(points) < 2 or points[0][0] != 0:
        raise InvalidDPathError("a track needs t_0 = 0 and a positive length")
    for (t0, x0), (t1, x1) in zip(points, points[1:]):
        if t1 <= t0:
            raise InvalidDPathError("breakpoint times must increase")
        if any(b < a for a, b in zip(x0, x1)):
            raise InvalidDPathError("track decreases between t=%s and t=%s" %
                                    (t0, t1))
    return Segment(carrier, tuple(_drop_collinear(points)))


def _normalise(K, segments):
    merged = []
    for seg in segments:
        if merged and merged[-1].carrier == seg.carrier and \
                merged[-1].end == seg.start:
            prev = merged.pop()
            offset = prev.length
            points = list(prev.breaks) + [(offset + t, x)
                                          for t, x in seg.breaks[1:]]
            seg = Segment(seg.carrier, tuple(_drop_collinear(points)))
        merged.append(seg)
    return tuple(merged)


@dataclass(frozen=True)
class DPath:
    """a nonconstant Moore d-path; the complex is not part of equality"""
    complex: PrecubicalSet = field(compare=False, repr=False)
    segments: tuple

    @property
    def length(self):
        return sum((s.length for s in self.segments), Fraction(0))

    def segment_times(self):
        """global start times of the segments"""
        times, t = [], Fraction(0)
        for seg in self.segments:
            times.append(t)
            t += seg.length
        return times


def make_dpath(K, segments):
    """returns a DPath in K from Segments or (carrier, breaks) pairs

    Checks that consecutive segments glue in |K| and that the path moves."""
    segs = [s if isinstance(s, Segment) else make_segment(*s)
            for s in segments]
    if not segs:
        raise InvalidDPathError("a path needs at least one segment")
    for seg in segs:
        if not 0 <= seg.carrier.index < K.num_cells(seg.carrier.dim):
            raise InvalidDPathError("carrier %s not in the complex" %
                                    (tuple(seg.carrier),))
    for a, b in zip(segs, segs[1:]):
        end = canonicalize(K, a.carrier, a.end)
        start = canonicalize(K, b.carrier, b.start)
        if end != start:
            raise EndpointMismatchError(end, start)
    if all(seg.start == seg.end for seg in segs):
        raise InvalidDPathError("constant paths are excluded")
    return DPath(K, _normalise(K, segs))


def linear_path(K, carrier, start, end, length=None):
    """returns the straight path from start to end inside carrier

    length defaults to the L1 distance, giving a natural path."""
    if length is None:
        length = d1(start, end)
    return make_dpath(K, [(carrier, [(0, start), (length, end)])])


def diagonal(K, carrier, length=None):
    """returns the diagonal of carrier from its lower to its upper corner"""
    n = carrier.dim
    return linear_path(K, carrier, (0,) * n, (1,) * n, length)


def start_point(path):
    seg = path.segments[0]
    return canonicalize(path.complex, seg.carrier, seg.start)


def end_point(path):
    seg = path.segments[-1]
    return canonicalize(path.complex, seg.carrier, seg.end)


def point_at(path, t):
    """returns the canonical point of path at global time t"""
    t = Fraction(t)
    if not 0 <= t <= path.length:
        raise ValueError("time %s outside [0, %s]" % (t, path.length))
    for offset, seg in zip(path.segment_times(), path.segments):
        if t <= offset + seg.length:
            return canonicalize(path.complex, seg.carrier,
                                seg.at(t - offset))
    raise AssertionError("unreachable")


class PLMap:
    """nondecreasing piecewise-linear map [0, a] -> [0, b] with rational
    breakpoints, starting at (0, 0)"""

    def __init__(self, breakpoints):
        points = [(Fraction(s), Fraction(t)) for s, t in breakpoints]
        if len(points) < 2 or points[0] != (0, 0):
            raise ValueError("breakpoints must start at (0, 0) and have "
                             "positive domain")
        for (s0, t0), (s1, t1) in zip(points, points[1:]):
            if s1 <= s0:
                raise ValueError("domain breakpoints must increase")
            if t1 < t0:
                raise ValueError("map must be nondecreasing")
        points = [(s, (t,)) for s, t in points]
        self.breakpoints = tuple((s, t[0]) for s, t in
                                 _drop_collinear(points))

    @property
    def domain_length(self):
        return self.breakpoints[-1][0]

    @property
    def image_length(self):
        return self.breakpoints[-1][1]

    def __call__(self, s):
        s = Fraction(s)
        domain = [p[0] for p in self.breakpoints]
        if not 0 <= s <= domain[-1]:
            raise ValueError("%s outside [0, %s]" % (s, domain[-1]))
        k = min(bisect_right(domain, s), len(domain) - 1)
        (s0, t0), (s1, t1) = self.breakpoints[k - 1], self.breakpoints[k]
        return t0 + (s - s0) * (t1 - t0) / (s1 - s0)

    def is_identity(self):
        return all(s == t for s, t in self.breakpoints)

    def is_strictly_increasing(self):
        return all(t1 > t0 for (_, t0), (_, t1) in
                   zip(self.breakpoints, self.breakpoints[1:]))

    def __eq__(self, other):
        return isinstance(other, PLMap) and \
            self.breakpoints == other.breakpoints

    def __hash__(self):
        return hash(self.breakpoints)

    def __repr__(self):
        pairs = ", ".join("(%s, %s)" % (frac_to_str(s), frac_to_str(t))
                          for s, t in self.breakpoints)
        return "%s([%s])" % (self.__class__.__name__, pairs)


class Reparam(PLMap):
    """strictly increasing PL bijection [0, l1] -> [0, l2]"""

    def __init__(self, breakpoints):
        super().__init__(breakpoints)
        if not self.is_strictly_increasing():
            raise ValueError("a reparametrisation must be strictly "
                             "increasing")

    def inverse(self):
        return Reparam([(t, s) for s, t in self.breakpoints])


def identity_reparam(length):
    return Reparam([(0, 0), (length, length)])


def invert_phi(phi):
    return phi.inverse()


def compose_phi(phi1, phi2):
    """returns phi1 ∘ phi2, phi2 applied first"""
    if phi2.image_length != phi1.domain_length:
        raise ValueError("cannot compose: image [0, %s] is not domain "
                         "[0, %s]" % (phi2.image_length, phi1.domain_length))
    inv2 = phi2.inverse()
    cuts = {s for s, _ in phi2.breakpoints}
    cuts.update(inv2(s) for s, _ in phi1.breakpoints)
    return Reparam([(s, phi1(phi2(s))) for s in sorted(cuts)])


def arc_length_profile(path):
    """returns L̂(path), the L1 arc length as a function of time"""
    points = [(Fraction(0), Fraction(0))]
    offset, travelled = Fraction(0), Fraction(0)
    for seg in path.segments:
        for (t0, x0), (t1, x1) in zip(seg.breaks, seg.breaks[1:]):
            travelled += d1(x0, x1)
            points.append((offset + t1, travelled))
        offset += seg.length
    return PLMap(points)


def arc_length(path):
    return arc_length_profile(path).image_length


def is_natural(path):
    return arc_length_profile(path).is_identity()


def moore_compose(path1, path2):
    """returns path1 * path2 on [0, l1 + l2]"""
    end, start = end_point(path1), start_point(path2)
    if end != start:
        raise EndpointMismatchError(end, start)
    return make_dpath(path1.complex, path1.segments + path2.segments)


def scale(path, c):
    """returns the path run on [0, c * length]"""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")
    segs = [Segment(s.carrier, tuple((c * t, x) for t, x in s.breaks))
            for s in path.segments]
    return DPath(path.complex, tuple(segs))


def normalized_compose(path1, path2):
    """returns path1 *_N path2, both halves at double speed on [0, 1]"""
    if path1.length != 1 or path2.length != 1:
        raise ValueError("normalized composition needs paths on [0, 1]")
    half = Fraction(1, 2)
    return moore_compose(scale(path1, half), scale(path2, half))


def _pieces(path):
    """yields (global t0, global t1, x0, x1, segment) for every linear piece"""
    for offset, seg in zip(path.segment_times(), path.segments):
        for (t0, x0), (t1, x1) in zip(seg.breaks, seg.breaks[1:]):
            yield offset + t0, offset + t1, x0, x1, seg


def stop_intervals(path):
    """returns the maximal intervals on which path does not move"""
    stops = []
    for t0, t1, x0, x1, _ in _pieces(path):
        if x0 != x1:
            continue
        if stops and stops[-1][1] == t0:
            stops[-1] = (stops[-1][0], t1)
        else:
            stops.append((t0, t1))
    return stops


def is_regular(path):
    """returns a Verdict; the witness of a failure is a stop interval"""
    stops = stop_intervals(path)
    if stops:
        return Verdict(False, stops[0])
    return Verdict(True)


def _is_corner(coords):
    return all(v in (0, 1) for v in coords)


def is_tame(path):
    """returns a Verdict; the witness of a failure is the canonical point at
    which a cube factor is entered or left away from a cube vertex"""
    K = path.complex
    runs = []
    for seg in path.segments:
        if runs and runs[-1][0] == seg.carrier:
            runs[-1][2] = seg.end
        else:
            runs.append([seg.carrier, seg.start, seg.end])
    for carrier, start, end in runs:
        if not _is_corner(start):
            return Verdict(False, canonicalize(K, carrier, start))
        if not _is_corner(end):
            return Verdict(False, canonicalize(K, carrier, end))
    return Verdict(True)


def reparametrize(path, phi):
    """returns path ∘ phi"""
    if phi.image_length != path.length:
        raise ValueError("reparametrisation image [0, %s] does not match "
                         "path length %s" % (phi.image_length, path.length))
    inv = phi.inverse()
    cuts = [s for s, _ in phi.breakpoints]
    segs = []
    for offset, seg in zip(path.segment_times(), path.segments):
        u0, u1 = inv(offset), inv(offset + seg.length)
        times = {inv(offset + t) for t, _ in seg.breaks}
        times.update(s for s in cuts if u0 < s < u1)
        breaks = [(s - u0, seg.at(phi(s) - offset)) for s in sorted(times)]
        segs.append(Segment(seg.carrier, tuple(_drop_collinear(breaks))))
    return DPath(path.complex, _normalise(path.complex, segs))


def _without_stops(path):
    """returns path with every stop interval cut out"""
    segs = []
    for seg in path.segments:
        breaks = [seg.breaks[0]]
        t = Fraction(0)
        for (t0, x0), (t1, x1) in zip(seg.breaks, seg.breaks[1:]):
            if x0 != x1:
                t += t1 - t0
                breaks.append((t, x1))
        if len(breaks) > 1:
            segs.append(Segment(seg.carrier, tuple(_drop_collinear(breaks))))
    return DPath(path.complex, _normalise(path.complex, segs))


def naturalize(path, require_regular=True):
    """returns (phi, nu) with phi = L̂(path) and nu = path ∘ phi⁻¹ natural

    Arguments:
        - path: a d-path between vertices with integer L1 length
        - require_regular: when True a stop interval raises NotRegularError.
          When False the stops are cut out before naturalizing and phi is
          returned as the nondecreasing PLMap L̂(path), constant on each
          stop; path(t) = nu(phi(t)) still holds but phi has no inverse.
    """
    stops = stop_intervals(path)
    if stops and require_regular:
        raise NotRegularError(stops[0])
    if not (start_point(path).is_vertex and end_point(path).is_vertex):
        raise NaturalizationError("naturalization needs vertex end points")
    profile = arc_length_profile(path)
    total = profile.image_length
    if total.denominator != 1:
        raise NaturalizationError("L1 length %s is not an integer" % total)
    if stops:
        return profile, naturalize(_without_stops(path))[1]
    phi = Reparam(profile.breakpoints)
    return phi, reparametrize(path, phi.inverse())


def denaturalize(phi, nu):
    """returns nu ∘ phi, the inverse of naturalize"""
    return reparametrize(nu, phi)


def _coords_to_json(coords):
    return [frac_to_str(v) for v in coords]


def dpath_to_json(path):
    return [dict(carrier=list(seg.carrier),
                 breaks=[[frac_to_str(t), _coords_to_json(x)]
                         for t, x in seg.breaks])
            for seg in path.segments]


def write_dpath(path):
    """returns the .dpath JSON text for path"""
    return json.dumps(dpath_to_json(path), indent=2) + "\n"


def read_dpath(K, text):
    """returns the DPath in K encoded by .dpath JSON text"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise DPathFormatError("line %d, column %d: %s" %
                               (err.lineno, err.colno, err.msg))
    if not isinstance(data, list):
        raise DPathFormatError("a .dpath document is a list of segments")
    segments = []
    for k, record in enumerate(data):
        try:
            carrier = CellId(*record['carrier'])
            breaks = [(str_to_frac(t), [str_to_frac(v) for v in x])
                      for t, x in record['breaks']]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
            raise DPathFormatError("segment %d: %s" % (k, err))
        segments.append((carrier, breaks))
    return make_dpath(K, segments)


def write_reparam(phi):
    data = dict(breakpoints=[[frac_to_str(s), frac_to_str(t)]
                             for s, t in phi.breakpoints])
    return json.dumps(data, indent=2) + "\n"


def read_reparam(text):
    try:
        data = json.loads(text)
        return Reparam([(str_to_frac(s), str_to_frac(t))
                        for s, t in data['breakpoints']])
    except json.JSONDecodeError as err:
        raise DPathFormatError("line %d, column %d: %s" %
                               (err.lineno, err.colno, err.msg))
    except (KeyError, TypeError, ZeroDivisionError) as err:
        raise DPathFormatError("bad reparametrisation: %s" % err)
