"""a small PV language and its compilation to precubical sets

    sem a 1;
    proc p: P(a).V(a);

Process i with actions a_1..a_L runs along the timeline 0..L, action a_k
taking place at time k. A semaphore is held on the open interval between a
P and its matching V. The compiled complex is the product of the timelines
minus every cell on which some semaphore is held beyond its capacity.
"""
import re
from dataclasses import dataclass
from itertools import product

from cube_paths.pcset import CellId, from_named_cells

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"


class PvError(ValueError):
    def __init__(self, msg, line, column):
        super().__init__("line %d, column %d: %s" % (line, column, msg))
        self.line = line
        self.column = column


class PvSyntaxError(PvError):
    pass


class PvSemanticError(PvError):
    pass


_token_pattern = re.compile(r"""
    (?P<space>[ \t\r]+) |
    (?P<newline>\n) |
    (?P<comment>\#[^\n]*) |
    (?P<number>\d+) |
    (?P<name>[A-Za-z_][A-Za-z0-9_]*) |
    (?P<punct>[;:.()])
    """, re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    """returns Tokens, whitespace and # comments dropped"""
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        match = _token_pattern.match(text, pos)
        if match is None:
            raise PvSyntaxError("unexpected character %r" % text[pos], line,
                                pos - start + 1)
        kind = match.lastgroup
        if kind == 'newline':
            line += 1
            start = match.end()
        elif kind not in ('space', 'comment'):
            tokens.append(Token(kind, match.group(), line, pos - start + 1))
        pos = match.end()
    tokens.append(Token('end', '', line, pos - start + 1))
    return tokens


@dataclass(frozen=True)
class Action:
    kind: str
    semaphore: str


@dataclass(frozen=True)
class Process:
    name: str
    actions: tuple

    def __len__(self):
        return len(self.actions)


@dataclass(frozen=True)
class PvProgram:
    semaphores: tuple
    processes: tuple

    def capacity(self, name):
        return dict(self.semaphores)[name]


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, msg, token=None):
        token = token or self.current
        return PvSyntaxError(msg, token.line, token.column)

    def expect(self, kind, text=None):
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text or kind
            found = token.text or 'end of input'
            raise self.error("expected %r, found %r" % (wanted, found))
        self.pos += 1
        return token

    def at_keyword(self, word):
        return self.current.kind == 'name' and self.current.text == word

    def program(self):
        semaphores = []
        processes = []
        while self.at_keyword('sem'):
            semaphores.append(self.semaphore())
        if not self.at_keyword('proc'):
            raise self.error("expected 'sem' or 'proc'")
        while self.at_keyword('proc'):
            processes.append(self.process())
        self.expect('end')
        return semaphores, processes

    def semaphore(self):
        self.expect('name', 'sem')
        name = self.expect('name')
        capacity = self.expect('number')
        self.expect('punct', ';')
        return name, capacity

    def process(self):
        self.expect('name', 'proc')
        name = self.expect('name')
        self.expect('punct', ':')
        if self.current.text == ';':
            raise PvSemanticError("process %r has no actions" % name.text,
                                  name.line, name.column)
        actions = [self.action()]
        while self.current.text == '.':
            self.pos += 1
            actions.append(self.action())
        self.expect('punct', ';')
        return name, actions

    def action(self):
        kind = self.current
        if kind.kind != 'name' or kind.text not in ('P', 'V'):
            raise self.error("expected P(...) or V(...)")
        self.pos += 1
        self.expect('punct', '(')
        sem = self.expect('name')
        self.expect('punct', ')')
        return kind, sem


def parse_pv(text):
    """returns the PvProgram for PV source text

    Raises PvSyntaxError for grammar errors and PvSemanticError for unknown
    or duplicate names, capacity problems and unbalanced P/V."""
    sem_tokens, proc_tokens = _Parser(text).program()

    capacities = {}
    for name, capacity in sem_tokens:
        if name.text in capacities:
            raise PvSemanticError("semaphore %r declared twice" % name.text,
                                  name.line, name.column)
        if int(capacity.text) < 1:
            raise PvSemanticError("capacity of %r must be positive" %
                                  name.text, capacity.line, capacity.column)
        capacities[name.text] = int(capacity.text)

    processes = []
    seen = set()
    for name, actions in proc_tokens:
        if name.text in seen:
            raise PvSemanticError("process %r declared twice" % name.text,
                                  name.line, name.column)
        seen.add(name.text)
        depth = dict.fromkeys(capacities, 0)
        for kind, sem in actions:
            if sem.text not in capacities:
                raise PvSemanticError("unknown semaphore %r" % sem.text,
                                      sem.line, sem.column)
            if kind.text == 'P':
                depth[sem.text] += 1
                if depth[sem.text] > capacities[sem.text]:
                    raise PvSemanticError(
                        "process %r takes %r beyond its capacity %d" %
                        (name.text, sem.text, capacities[sem.text]),
                        kind.line, kind.column)
            else:
                if depth[sem.text] == 0:
                    raise PvSemanticError(
                        "V(%s) without a preceding P(%s)" %
                        (sem.text, sem.text), kind.line, kind.column)
                depth[sem.text] -= 1
        held = sorted(s for s, d in depth.items() if d)
        if held:
            raise PvSemanticError("process %r ends holding %s" %
                                  (name.text, ', '.join(held)),
                                  name.line, name.column)
        processes.append(Process(name.text, tuple(
            Action(kind.text, sem.text) for kind, sem in actions)))
    return PvProgram(tuple(capacities.items()), tuple(processes))


def _hold_counts(process, semaphores):
    """returns (vertex, edge) hold tables: vertex[s][k] is the count held at
    time k, edge[s][k] the count held inside (k, k + 1)"""
    vertex, edge = {}, {}
    length = len(process)
    for sem in semaphores:
        taken = [0] * (length + 2)
        released = [0] * (length + 2)
        for k, action in enumerate(process.actions, 1):
            if action.semaphore == sem:
                if action.kind == 'P':
                    taken[k] += 1
                else:
                    released[k] += 1
        p_before, p_upto, v_upto = [], [], []
        p, v = 0, 0
        for k in range(length + 1):
            p_before.append(p)
            p += taken[k]
            v += released[k]
            p_upto.append(p)
            v_upto.append(v)
        vertex[sem] = [p_before[k] - v_upto[k] for k in range(length + 1)]
        edge[sem] = [p_upto[k] - v_upto[k] for k in range(length)]
    return vertex, edge


def grid_cells(prog):
    """yields every legal GridCell by dimension, in product order

    A GridCell has one (position, span) entry per process; span 1 means the
    process is executing the action between position and position + 1."""
    names = [name for name, _ in prog.semaphores]
    capacity = dict(prog.semaphores)
    holds = [_hold_counts(proc, names) for proc in prog.processes]
    options = [[(k, 0) for k in range(len(proc) + 1)] +
               [(k, 1) for k in range(len(proc))]
               for proc in prog.processes]
    cells = []
    for cell in product(*options):
        legal = True
        for sem in names:
            total = sum(edge[sem][k] if span else vertex[sem][k]
                        for (k, span), (vertex, edge) in zip(cell, holds))
            if total > capacity[sem]:
                legal = False
                break
        if legal:
            cells.append(cell)
    cells.sort(key=lambda c: sum(span for _, span in c))
    return cells


def cell_label(cell):
    return ','.join("%d-%d" % (k, k + 1) if span else str(k)
                    for k, span in cell)


def cell_face(cell, i, alpha):
    """returns ∂_i^alpha of a GridCell, i counting its spanning entries"""
    spanning = [p for p, (_, span) in enumerate(cell) if span]
    p = spanning[i - 1]
    k, _ = cell[p]
    return cell[:p] + ((k + alpha, 0),) + cell[p + 1:]


@dataclass(frozen=True)
class CompiledProgram:
    program: PvProgram
    complex: object
    bottom: CellId
    top: CellId


def compile_pv(prog):
    """returns the CompiledProgram of prog"""
    named = {}
    for cell in grid_cells(prog):
        dim = sum(span for _, span in cell)
        named[cell_label(cell)] = [
            (cell_label(cell_face(cell, i, 0)),
             cell_label(cell_face(cell, i, 1))) for i in range(1, dim + 1)]
    K = from_named_cells(named)
    bottom = tuple((0, 0) for _ in prog.processes)
    top = tuple((len(proc), 0) for proc in prog.processes)
    return CompiledProgram(prog, K, K.cell_by_label(cell_label(bottom), 0),
                           K.cell_by_label(cell_label(top), 0))


def deadlock_candidates(K, top):
    """returns vertices other than top with no outgoing edge"""
    has_exit = {K.face(e, 1, 0) for e in K.cells(1)}
    return [v for v in K.cells(0) if v != top and v not in has_exit]


def program_summary(prog):
    """returns header and rows describing the processes"""
    header = ['process', 'length', 'actions']
    rows = [[proc.name, len(proc),
             '.'.join("%s(%s)" % (a.kind, a.semaphore) for a in proc.actions)]
            for proc in prog.processes]
    return header, rows
