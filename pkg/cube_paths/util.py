import os
import gzip
import bz2
import json
from configparser import RawConfigParser, NoSectionError, NoOptionError, \
    ParsingError
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from multiprocessing import Pool
from typing import Any

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"


_analysis_defaults = dict(max_n=None, length_window=0, max_dim=None, jobs=1,
                          coefficients='rational', snf_limit=40000)
_analysis_types = dict(max_n=int, length_window=int, max_dim=int, jobs=int,
                       coefficients=str, snf_limit=int)


@dataclass(frozen=True)
class AnalysisConfig:
    """resolved settings for a path-space analysis"""
    input: str = None
    source: str = None
    target: str = None
    max_n: int = None
    length_window: int = 0
    max_dim: int = None
    json: bool = False
    jobs: int = 1
    coefficients: str = 'rational'
    snf_limit: int = 40000

    def __post_init__(self):
        if self.max_n is not None and self.max_n < 1:
            raise ValueError("max_n must be >= 1, got %s" % self.max_n)
        if self.length_window < 0:
            raise ValueError("length_window must be >= 0")
        if self.max_dim is not None and self.max_dim < 0:
            raise ValueError("max_dim must be >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1, got %s" % self.jobs)
        if self.coefficients not in ('rational', 'integer'):
            raise ValueError("coefficients must be 'rational' or 'integer'")


def get_analysis_config(cfg_path=None, **overrides):
    """returns an AnalysisConfig, user INI values layered over the defaults

    Arguments:
        - cfg_path: INI file with an [analysis] section
        - overrides: command line values, None means 'not given'
    """
    config = RawConfigParser()
    config.add_section('analysis')
    for key, default in _analysis_defaults.items():
        config.set('analysis', key, default)

    if cfg_path:
        user_config = RawConfigParser(allow_no_value=True)
        try:
            user_config.read(cfg_path)
        except ParsingError as err:
            msg = 'Could not parse %s: %s' % (cfg_path, err)
            raise ParsingError(msg)

        for key in _analysis_defaults:
            try:
                new_val = user_config.get('analysis', key)
                config.set('analysis', key, new_val)
            except (NoSectionError, NoOptionError):
                pass

    settings = {}
    for key, cast in _analysis_types.items():
        val = config.get('analysis', key)
        settings[key] = None if val in (None, 'None', '') else cast(val)

    for key, val in overrides.items():
        if val is not None:
            settings[key] = val

    return AnalysisConfig(**settings)


@dataclass(frozen=True)
class Verdict:
    """a yes/no answer with the evidence for a no"""
    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


def map_jobs(func, items, jobs=1, **kwargs):
    """returns [func(item, **kwargs) for item in items], in input order

    jobs > 1 farms the items out to a process pool."""
    items = list(items)
    if kwargs:
        func = partial(func, **kwargs)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with Pool(min(jobs, len(items))) as pool:
        return pool.map(func, items)


def frac_to_str(value):
    """exact rational as a 'p/q' string"""
    value = Fraction(value)
    return "%d/%d" % (value.numerator, value.denominator)


def str_to_frac(text):
    """parses 'p/q', an integer or an int-like string into a Fraction"""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError("rationals must be written as 'p/q', got %r" % text)
    return Fraction(text)


def dump_json(data, outfile_path):
    '''save data in json format to outfile_path, stable key order'''
    with open(outfile_path, mode="w", encoding="utf-8") as outfile:
        outfile.write(to_json(data))


def to_json(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_json(infile_path):
    with open_(infile_path, mode='rt') as infile:
        return json.load(infile)


def read_text(path):
    with open_(path, mode='rt') as infile:
        return infile.read()


def open_(filename, mode='r'):
    """handles different compression"""
    op = {'gz': gzip.open, 'bz2': bz2.open}.get(
        filename.split('.')[-1], open)
    if op is open and 't' in mode:
        return op(filename, mode.replace('t', ''), encoding='utf-8')
    return op(filename, mode)


def abspath(path):
    """returns an expanded, absolute path"""
    return os.path.abspath(os.path.expanduser(path))


def makedirs(path):
    """creates dir path"""
    os.makedirs(path, exist_ok=True)
