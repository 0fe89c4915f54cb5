#!/usr/bin/env python
import os
import re
import sys
import time

import click

from cogent3 import make_table

from scitrack import CachingLogger

from cube_paths import util
from cube_paths.chains import category_graph, enumerate_morphisms
from cube_paths.dpath import NaturalizationError, NotRegularError, \
    arc_length, dpath_to_json, is_natural, is_regular, is_tame, naturalize, \
    read_dpath, write_dpath, write_reparam
from cube_paths.nerve import path_space_report, write_sparse_triplets
from cube_paths.pcset import MalformedComplexError, \
    boundary, read_pcs, skeleton, standard_cube, validate, vertex_lookup, \
    write_pcs
from cube_paths.pvlang import PvError, compile_pv, deadlock_candidates, \
    parse_pv, program_summary
from cube_paths.spatial import is_spatial

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"

LOGGER = CachingLogger(create_dir=True)

EXIT_VERDICT = 1
EXIT_INPUT = 2

UP_TO_HOMOTOPY = "homology of the chain-category nerve, up to homotopy"


def fail(msg, code=EXIT_INPUT):
    click.secho(msg, fg='red', err=True)
    sys.exit(code)


def start_log(outpath, name, args, dry_run):
    """directs the run log to outpath/name.log"""
    if outpath is None or dry_run:
        return
    util.makedirs(outpath)
    LOGGER.log_file_path = os.path.join(outpath, "%s.log" % name)
    LOGGER.log_message(str(args), label='vars')


def log_duration(start_time):
    duration = time.time() - start_time
    LOGGER.log_message("%.2f" % (duration / 60.),
                       label="run duration (minutes)")


def check_overwrite(paths, force_overwrite):
    existing = [p for p in paths if os.path.exists(p)]
    if existing and not force_overwrite:
        fail("%s exists, use -F to overwrite" % ", ".join(existing))


def write_output(path, text, label):
    with open(path, mode='w', encoding='utf-8') as outfile:
        outfile.write(text)
    LOGGER.output_file(path, label=label)


_generator_spec = re.compile(r"(cube|boundary|skeleton):(\d+)(?::(.+))?$")


def build_complex(kind, n, input_path=None):
    """returns □[n], ∂□[n] or the n-skeleton of the complex at input_path"""
    if n < 0:
        fail("n must be non-negative")
    if kind == 'cube':
        return standard_cube(n)
    if kind == 'boundary':
        return boundary(n)
    if not input_path:
        fail("skeleton needs an input complex")
    return skeleton(load_complex(input_path), n)


def load_complex(path, label="complex_path"):
    """returns the validated PrecubicalSet stored at path

    When no such file exists, path may name a generated complex as cube:N,
    boundary:N or skeleton:N:PATH."""
    match = _generator_spec.match(path)
    if match and not os.path.exists(path):
        kind, n, inner = match.groups()
        if (kind == 'skeleton') != (inner is not None):
            fail("bad complex spec %r" % path)
        LOGGER.log_message(path, label=label)
        return build_complex(kind, int(n), inner)

    path = util.abspath(path)
    try:
        K = read_pcs(util.read_text(path))
    except (OSError, ValueError) as err:
        fail("could not read %s: %s" % (path, err))
    LOGGER.input_file(path, label=label)
    try:
        report = validate(K)
    except MalformedComplexError as err:
        fail(str(err))
    if not report:
        fail(str(report), code=EXIT_VERDICT)
    return K


def resolve_vertex(K, ref, default):
    if ref is None:
        ref = default
    try:
        return vertex_lookup(K, ref)
    except ValueError as err:
        fail("bad vertex %r: %s" % (ref, err))


def vertex_name(K, v):
    label = K.label(v)
    return label if label is not None else str(v.index)


def report_table(reports, title):
    header = ['n', 'chains', 'arrows', 'simplices', 'betti', 'torsion',
              'components']
    rows = []
    for r in reports:
        torsion = ' '.join('Z/%d' % t for ts in r.torsion for t in ts)
        rows.append([r.n, r.chains, r.arrows,
                     ' '.join(map(str, r.simplices)),
                     ' '.join(map(str, r.betti)), torsion or '-',
                     r.betti[0] if r.betti else 0])
    return make_table(header=header, rows=rows, title=title)


def run_paths(K, source, target, config, emit_complex, outpath, dry_run,
              extra=None):
    """computes, prints and saves the path-space report"""
    keep = emit_complex is not None
    reports = path_space_report(K, source, target, max_n=config.max_n,
                                max_dim=config.max_dim,
                                window=config.length_window,
                                coefficients=config.coefficients,
                                snf_limit=config.snf_limit, jobs=config.jobs,
                                keep_complex=keep)
    for r in reports:
        if r.duplicates:
            LOGGER.log_message("%d duplicate morphism keys at n=%d" %
                               (r.duplicates, r.n), label="duplicates")
        if r.rational_fallback:
            LOGGER.log_message("rational ranks used at n=%d for dims %s" %
                               (r.n, list(r.rational_fallback)),
                               label="homology_fallback")

    data = dict(source=vertex_name(K, source), target=vertex_name(K, target),
                coefficients=config.coefficients, note=UP_TO_HOMOTOPY,
                lengths=[r.to_dict() for r in reports])
    if extra:
        data.update(extra)

    title = "path space %s -> %s (%s)" % (data['source'], data['target'],
                                          UP_TO_HOMOTOPY)
    if config.json:
        text = util.to_json(data)
    elif reports:
        text = str(report_table(reports, title)) + "\n"
    else:
        text = "%s\nno cube chains\n" % title
    click.echo(text, nl=False)

    if outpath is not None and not dry_run:
        write_output(os.path.join(outpath, "paths.json"), util.to_json(data),
                     label="report")

    if keep and not dry_run:
        util.makedirs(emit_complex)
        for r in reports:
            path = os.path.join(emit_complex, "boundary_n%d.txt" % r.n)
            write_output(path, write_sparse_triplets(r.complex_z),
                         label="boundary_matrices")
    return reports


_input = click.option('-i', '--input', 'input_path', required=True,
                      help='precubical set in .pcs format, or a generated '
                      'complex cube:N, boundary:N or skeleton:N:PATH.')
_outpath = click.option('-o', '--outpath',
                        help='Directory path to write data.')
_source = click.option('--from', 'source',
                       help='start vertex, label or index. Defaults to the '
                       'first vertex.')
_target = click.option('--to', 'target',
                       help='end vertex, label or index. Defaults to the '
                       'last vertex.')
_max_n = click.option('--max-n', type=int,
                      help='largest L1 length analysed. Defaults to the '
                      'shortest length plus the length window.')
_length_window = click.option('--length-window', type=int,
                              help='lengths beyond the shortest to analyse.')
_max_dim = click.option('--max-dim', type=int,
                        help='highest homology dimension reported.')
_json = click.option('--json', 'as_json', is_flag=True,
                     help='write the report as JSON.')
_jobs = click.option('--jobs', type=int,
                     help='number of processes for the per-length work.')
_coefficients = click.option('--coefficients',
                             type=click.Choice(['rational', 'integer']),
                             help='homology coefficients, integer adds '
                             'torsion.')
_snf_limit = click.option('--snf-limit', type=int,
                          help='largest matrix given a Smith normal form.')
_config = click.option('--config', 'cfg_path',
                       type=click.Path(exists=True, dir_okay=False),
                       help='INI file with an [analysis] section.')
_emit_complex = click.option('--emit-complex',
                             help='directory for sparse boundary matrices.')
_force_overwrite = click.option('-F', '--force_overwrite', is_flag=True,
                                help='Overwrite existing files.')
_dry_run = click.option('-D', '--dry_run', is_flag=True,
                        help='Do a dry run of the analysis without writing '
                        'output.')


def analysis_config(cfg_path, **kwargs):
    try:
        config = util.get_analysis_config(cfg_path=cfg_path, **kwargs)
    except ValueError as err:
        fail("bad settings: %s" % err)
    if cfg_path:
        LOGGER.input_file(util.abspath(cfg_path), label="config_path")
    return config


@click.group()
def main():
    """directed path spaces of precubical sets"""
    pass


@main.command()
@click.argument('kind', type=click.Choice(['cube', 'boundary', 'skeleton']))
@click.argument('n', type=int)
@click.option('-i', '--input', 'input_path',
              help='complex to take the skeleton of.')
@click.option('-o', '--outfile', help='.pcs file to write, else stdout.')
@_force_overwrite
@_dry_run
def generate(kind, n, input_path, outfile, force_overwrite, dry_run):
    """writes □[n], its boundary, or the n-skeleton of a complex"""
    args = locals()
    if outfile:
        outfile = util.abspath(outfile)
        check_overwrite([outfile], force_overwrite)
        start_log(os.path.dirname(outfile),
                  os.path.splitext(os.path.basename(outfile))[0], args,
                  dry_run)

    text = write_pcs(build_complex(kind, n, input_path))
    if outfile and not dry_run:
        write_output(outfile, text, label="pcs")
    elif not outfile:
        click.echo(text, nl=False)


@main.command()
@_input
@_source
@_target
@_max_n
@_length_window
@_max_dim
@_json
@_jobs
@_coefficients
@_snf_limit
@_config
@_emit_complex
@_outpath
@_force_overwrite
@_dry_run
def paths(input_path, source, target, max_n, length_window, max_dim, as_json,
          jobs, coefficients, snf_limit, cfg_path, emit_complex, outpath,
          force_overwrite, dry_run):
    """per-length cube-chain counts and nerve homology"""
    args = locals()
    start_time = time.time()
    if outpath:
        outpath = util.abspath(outpath)
        check_overwrite([os.path.join(outpath, "paths.json")],
                        force_overwrite)
    start_log(outpath, "paths", args, dry_run)
    config = analysis_config(cfg_path, input=input_path, source=source,
                             target=target, max_n=max_n,
                             length_window=length_window, max_dim=max_dim,
                             json=as_json or None, jobs=jobs,
                             coefficients=coefficients, snf_limit=snf_limit)
    K = load_complex(input_path)
    if not K.num_cells(0):
        fail("the complex has no vertices")
    alpha = resolve_vertex(K, source, 0)
    beta = resolve_vertex(K, target, K.num_cells(0) - 1)
    run_paths(K, alpha, beta, config, emit_complex, outpath, dry_run)
    log_duration(start_time)


@main.command('naturalize')
@_input
@click.option('--dpath', 'dpath_path', required=True,
              help='d-path in .dpath format.')
@click.option('--allow-stops', is_flag=True,
              help='cut stop intervals out instead of failing.')
@_json
@_outpath
@_force_overwrite
@_dry_run
def naturalize_path(input_path, dpath_path, allow_stops, as_json, outpath,
                    force_overwrite, dry_run):
    """splits a regular d-path into its arc-length reparametrisation and
    natural path"""
    args = locals()
    start_time = time.time()
    stem = os.path.basename(dpath_path).split('.')[0]
    if outpath:
        outpath = util.abspath(outpath)
        check_overwrite([os.path.join(outpath, stem + ".reparam"),
                         os.path.join(outpath, stem + ".natural.dpath")],
                        force_overwrite)
    start_log(outpath, "naturalize", args, dry_run)
    K = load_complex(input_path)
    dpath_path = util.abspath(dpath_path)
    try:
        path = read_dpath(K, util.read_text(dpath_path))
    except (OSError, ValueError) as err:
        fail("could not read %s: %s" % (dpath_path, err))
    LOGGER.input_file(dpath_path, label="dpath_path")

    regular, tame = is_regular(path), is_tame(path)
    try:
        phi, nu = naturalize(path, require_regular=not allow_stops)
    except NotRegularError as err:
        fail(str(err), code=EXIT_VERDICT)
    except NaturalizationError as err:
        fail(str(err))

    data = dict(regular=bool(regular), tame=bool(tame),
                natural=is_natural(path), length=util.frac_to_str(path.length),
                arc_length=util.frac_to_str(arc_length(path)),
                reparam=[[util.frac_to_str(s), util.frac_to_str(t)]
                         for s, t in phi.breakpoints],
                natural_path=dpath_to_json(nu))
    if as_json:
        click.echo(util.to_json(data), nl=False)
    else:
        rows = [[k, str(data[k])] for k in ('regular', 'tame', 'natural',
                                              'length', 'arc_length')]
        rows.append(['reparam', ' '.join("(%s, %s)" % tuple(p)
                                         for p in data['reparam'])])
        click.echo(str(make_table(header=['property', 'value'], rows=rows,
                                  title="naturalization of %s" % stem)))

    if outpath and not dry_run:
        write_output(os.path.join(outpath, stem + ".reparam"),
                     write_reparam(phi), label="reparam")
        write_output(os.path.join(outpath, stem + ".natural.dpath"),
                     write_dpath(nu), label="natural_dpath")
    log_duration(start_time)


@main.command('check-spatial')
@_input
@_json
def check_spatial(input_path, as_json):
    """decides spatiality for complexes of dimension at most 3"""
    K = load_complex(input_path)
    verdict = is_spatial(K)
    data = dict(verdict=str(verdict))
    if verdict.status == 'not-spatial':
        first, second, words = verdict.witness
        data['witness'] = dict(cubes=[list(first), list(second)],
                               shared=list(words))
    if as_json:
        click.echo(util.to_json(data), nl=False)
        return
    click.echo(str(verdict))
    if 'witness' in data:
        first, second = data['witness']['cubes']
        click.echo("cubes %s and %s agree on %s" %
                   (first, second, ' '.join(data['witness']['shared'])))


def load_program(source_path):
    source_path = util.abspath(source_path)
    try:
        prog = parse_pv(util.read_text(source_path))
    except OSError as err:
        fail("could not read %s: %s" % (source_path, err))
    except PvError as err:
        fail("%s: %s" % (source_path, err))
    LOGGER.input_file(source_path, label="pv_path")
    return prog


@main.group()
def pv():
    """PV programs compiled to precubical sets"""
    pass


@pv.command('compile')
@click.argument('source_path', type=click.Path(dir_okay=False))
@click.option('--emit-pcs', help='.pcs file to write, else stdout.')
@_force_overwrite
@_dry_run
def pv_compile(source_path, emit_pcs, force_overwrite, dry_run):
    """compiles a PV program to a .pcs complex"""
    args = locals()
    if emit_pcs:
        emit_pcs = util.abspath(emit_pcs)
        check_overwrite([emit_pcs], force_overwrite)
        start_log(os.path.dirname(emit_pcs),
                  os.path.splitext(os.path.basename(emit_pcs))[0], args,
                  dry_run)
    compiled = compile_pv(load_program(source_path))
    text = write_pcs(compiled.complex)
    if emit_pcs and not dry_run:
        write_output(emit_pcs, text, label="pcs")
    elif not emit_pcs:
        click.echo(text, nl=False)


@pv.command('analyze')
@click.argument('source_path', type=click.Path(dir_okay=False))
@_max_n
@_length_window
@_max_dim
@_json
@_jobs
@_coefficients
@_snf_limit
@_config
@_emit_complex
@click.option('--emit-pcs', help='also write the compiled .pcs file.')
@_outpath
@_force_overwrite
@_dry_run
def pv_analyze(source_path, max_n, length_window, max_dim, as_json, jobs,
               coefficients, snf_limit, cfg_path, emit_complex, emit_pcs,
               outpath, force_overwrite, dry_run):
    """path-space report from all-start to all-end, plus deadlock scan"""
    args = locals()
    start_time = time.time()
    written = []
    if outpath:
        outpath = util.abspath(outpath)
        written.append(os.path.join(outpath, "paths.json"))
    if emit_pcs:
        emit_pcs = util.abspath(emit_pcs)
        written.append(emit_pcs)
    check_overwrite(written, force_overwrite)
    start_log(outpath, "pv_analyze", args, dry_run)
    config = analysis_config(cfg_path, input=source_path, max_n=max_n,
                             length_window=length_window, max_dim=max_dim,
                             json=as_json or None, jobs=jobs,
                             coefficients=coefficients, snf_limit=snf_limit)
    prog = load_program(source_path)
    compiled = compile_pv(prog)
    K = compiled.complex
    if emit_pcs and not dry_run:
        util.makedirs(os.path.dirname(emit_pcs))
        write_output(emit_pcs, write_pcs(K), label="pcs")

    deadlocks = [vertex_name(K, v)
                 for v in deadlock_candidates(K, compiled.top)]
    if not as_json:
        header, rows = program_summary(prog)
        click.echo(str(make_table(header=header, rows=rows,
                                  title="program")))
    run_paths(K, compiled.bottom, compiled.top, config, emit_complex,
              outpath, dry_run, extra=dict(deadlock_candidates=deadlocks))
    if not as_json:
        click.echo("deadlock candidates: %s" %
                   (' '.join(deadlocks) if deadlocks else 'none'))
    log_duration(start_time)


@main.command('category')
@_input
@_source
@_target
@click.option('-n', 'n', type=int, required=True, help='L1 length.')
def category(input_path, source, target, n):
    """writes the chain category for one length as JSON"""
    K = load_complex(input_path)
    alpha = resolve_vertex(K, source, 0)
    beta = resolve_vertex(K, target, K.num_cells(0) - 1)
    C = enumerate_morphisms(K, alpha, beta, n)
    click.echo(util.to_json(category_graph(C)), nl=False)


if __name__ == "__main__":
    main()
