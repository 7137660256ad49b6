"""
Command-line interface
Subcommands analyze, verify, solve, gen and oracle over edge-list input,
with key-sorted JSON or rich text output
"""

import functools
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .config import LOG_LEVELS, Settings, load_settings
from .digraph import Digraph, from_edge_list, to_dot, to_edge_list
from .errors import CapExceededError, DomainError, MvdError
from .generators import FAMILY_PARAMS, Family, GeneratorSpec
from .solver import MuResult, mu, mu_variant
from .structure import analyze
from .utils import EventLog, TextFormatter, configure_logging, dump_json
from .visibility import VisibilityReport, VisibilityVariant, naive_verify, verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3

VARIANTS = [v.value for v in VisibilityVariant]


class Session:
    """Per-invocation state shared by the subcommands"""

    def __init__(self, settings: Settings, input_path: Optional[str], events: EventLog):
        self.settings = settings
        self.input_path = input_path
        self.events = events

    @property
    def text_output(self) -> bool:
        return self.settings.output_format == 'text'

    def read_text(self) -> str:
        if self.input_path:
            try:
                with open(self.input_path, 'r', encoding='utf-8') as f:
                    return f.read()
            except OSError as e:
                raise DomainError(f"cannot read {self.input_path}: {e.strerror}") from e
        return click.get_text_stream('stdin').read()

    def read_graph(self) -> Digraph:
        graph = from_edge_list(self.read_text())
        logger.info("read graph with %d vertices and %d arcs", graph.n, graph.arc_count)
        return graph


def _fail(message: str, code: int):
    click.echo(TextFormatter.error(f"error: {message}"), err=True)
    sys.exit(code)


def handle_errors(command: Callable) -> Callable:
    """Map toolkit exceptions onto the exit-code contract"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CapExceededError as e:
            _fail(str(e), EXIT_REFUSED)
        except MvdError as e:
            _fail(str(e), EXIT_INPUT)

    return wrapper


def parse_vertex_set(graph: Digraph, spec: str) -> List[int]:
    """Comma-separated vertex names; 'all' selects every vertex unless it is a label"""
    if spec.strip() == 'all' and not (graph.labels and 'all' in graph.labels):
        return list(range(graph.n))
    names = [token.strip() for token in spec.split(',') if token.strip()]
    return [graph.index_of(name) for name in names]


def _console() -> Console:
    return Console(highlight=False, soft_wrap=True)


# ----------------------------------------------------------------------
# Text renderers
# ----------------------------------------------------------------------

def render_analysis(report: Dict[str, Any]):
    console = _console()
    click.echo(TextFormatter.header(f"{report['vertices']} vertices, {report['arcs']} arcs"))

    table = Table(title="Strongly connected components")
    table.add_column("#", justify="right")
    table.add_column("size", justify="right")
    table.add_column("vertices")
    for i, members in enumerate(report['components']):
        table.add_row(str(i), str(len(members)), escape(" ".join(members)))
    console.print(table)

    bridges = ", ".join(f"{u}->{v}" for u, v in report['bridges']) or "none"
    click.echo(f"strong bridges (beta={report['beta']}): {bridges}")
    click.echo(f"DAG: {report['is_dag']}   strongly connected: {report['strongly_connected']}")


def render_report(report: VisibilityReport, graph: Digraph):
    console = _console()
    data = report.as_dict(graph)
    members = "{" + ", ".join(data['set']) + "}"
    if report.valid:
        click.echo(TextFormatter.success(f"{members} is a {data['variant']} mutual-visibility set"))
        return

    click.echo(TextFormatter.warning(f"{members} is NOT a {data['variant']} mutual-visibility set"))
    table = Table(title=f"Blocked directions ({len(data['blocked'])} of {data['pairs_checked']} pairs)")
    for column in ("x", "y", "direction", "d_free", "d_restricted"):
        table.add_column(column)
    for blocked in data['blocked']:
        table.add_row(escape(blocked['x']), escape(blocked['y']), blocked['direction'],
                      *("-" if d is None else str(d) for d in (blocked['d_free'], blocked['d_restricted'])))
    console.print(table)


def render_result(result: MuResult, graph: Digraph):
    console = _console()
    data = result.as_dict(graph)
    click.echo(TextFormatter.header(f"mu ({data['variant']}) = {data['mu']}"))
    click.echo(f"witness: {{{', '.join(data['witness'])}}}   shortcut: {data['shortcut']}   "
               f"search nodes: {data['nodes_explored']}")
    if data['components']:
        table = Table(title="Per component")
        for column in ("size", "mu", "shortcut", "witness"):
            table.add_column(column)
        for component in data['components']:
            table.add_row(str(len(component['vertices'])), str(component['mu']),
                          component['shortcut'], escape(" ".join(component['witness'])))
        console.print(table)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

@click.group()
@click.option('--format', 'output_format', type=click.Choice(['json', 'text']), default=None,
              help='Output format (default from settings: json).')
@click.option('--input', 'input_path', type=click.Path(dir_okay=False), default=None,
              help='Edge-list file to read instead of stdin.')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='Settings file (json5 or yaml).')
@click.option('--log-level', type=click.Choice(list(LOG_LEVELS), case_sensitive=False), default=None,
              help='Logging verbosity on stderr.')
@click.option('--events', 'events_path', type=click.Path(dir_okay=False), default=None,
              help='Write solver and verifier events to this JSON file.')
@click.pass_context
@handle_errors
def cli(ctx, output_format, input_path, config_path, log_level, events_path):
    """Mutual-visibility analysis for directed graphs."""
    settings = load_settings(config_path)
    if output_format:
        settings.output_format = output_format
    configure_logging(log_level or settings.log_level)

    events_path = events_path or settings.event_log
    events = EventLog(enabled=bool(events_path))
    if events_path:
        ctx.call_on_close(lambda: events.save(events_path))
    ctx.obj = Session(settings, input_path, events)


@cli.command('analyze')
@click.option('--dot', is_flag=True, help='Emit the graph as Graphviz DOT instead.')
@click.pass_obj
@handle_errors
def analyze_command(session: Session, dot: bool):
    """Components, condensation and strong bridges."""
    graph = session.read_graph()
    if dot:
        click.echo(to_dot(graph))
        return
    report = analyze(graph)
    session.events.log('analyze', {'beta': report['beta'], 'components': len(report['components'])})
    if session.text_output:
        render_analysis(report)
    else:
        click.echo(dump_json(report))


@cli.command('verify')
@click.option('--set', 'vertex_set', required=True, help='Comma-separated vertices, or "all".')
@click.option('--variant', type=click.Choice(VARIANTS), default='standard', show_default=True)
@click.pass_obj
@handle_errors
def verify_command(session: Session, vertex_set: str, variant: str):
    """Check a set with the polynomial verifier; exit 1 when it is not valid."""
    graph = session.read_graph()
    report = verify(graph, parse_vertex_set(graph, vertex_set), variant)
    _emit_report(session, report, graph)


@cli.command('solve')
@click.option('--variant', type=click.Choice(VARIANTS), default='standard', show_default=True)
@click.option('--budget', type=click.IntRange(min=1), default=None,
              help='Largest component to search exactly (default from MVD_BUDGET or settings).')
@click.pass_obj
@handle_errors
def solve_command(session: Session, variant: str, budget: Optional[int]):
    """Exact mutual-visibility number with a witness set."""
    graph = session.read_graph()
    if variant == VisibilityVariant.STANDARD.value:
        result = mu(graph, budget or session.settings.solver_budget, session.events)
    else:
        result = mu_variant(graph, variant, cap=session.settings.bruteforce_cap)
    session.events.log('solve', result.as_dict(graph))
    _emit_result(session, result, graph)


@cli.command('gen', context_settings={'ignore_unknown_options': True})
@click.argument('family', type=click.Choice([f.value for f in Family]))
@click.argument('params', nargs=-1)
@click.option('--dot', is_flag=True, help='Emit Graphviz DOT instead of an edge list.')
@click.pass_obj
def gen_command(session: Session, family: str, params, dot: bool):
    """Generate a graph family as an edge list."""
    try:
        spec = GeneratorSpec.from_args(family, params)
        edge_text = session.read_text() if spec.family is Family.SYMMETRIZE else None
        graph = spec.build(edge_text)
    except MvdError as e:
        usage = " ".join([family] + [name.upper() for name in FAMILY_PARAMS[Family(family)]])
        click.echo(TextFormatter.error(f"error: {e}"), err=True)
        click.echo(f"usage: gen {usage}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(to_dot(graph) if dot else to_edge_list(graph))


@cli.command('oracle')
@click.option('--set', 'vertex_set', default=None,
              help='Verify this set by path enumeration instead of computing mu.')
@click.option('--variant', type=click.Choice(VARIANTS), default='standard', show_default=True)
@click.pass_obj
@handle_errors
def oracle_command(session: Session, vertex_set: Optional[str], variant: str):
    """Brute-force reference answers for small graphs."""
    graph = session.read_graph()
    if vertex_set is not None:
        report = naive_verify(graph, parse_vertex_set(graph, vertex_set), variant,
                              cap=session.settings.naive_cap)
        _emit_report(session, report, graph)
    else:
        result = mu_variant(graph, variant, cap=session.settings.bruteforce_cap)
        _emit_result(session, result, graph)


def _emit_report(session: Session, report: VisibilityReport, graph: Digraph):
    session.events.log('verify', report.as_dict(graph))
    if session.text_output:
        render_report(report, graph)
    else:
        click.echo(dump_json(report.as_dict(graph)))
    if not report.valid:
        sys.exit(EXIT_INVALID)


def _emit_result(session: Session, result: MuResult, graph: Digraph):
    if session.text_output:
        render_result(result, graph)
    else:
        click.echo(dump_json(result.as_dict(graph)))


def main():
    """Console entry point"""
    cli(prog_name='mutvis')


if __name__ == "__main__":
    main()
