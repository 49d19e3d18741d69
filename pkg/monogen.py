#!/usr/bin/python3

"""Monogenic orders in characteristic p: scenario runner and checks."""

import logging
import sys
import time
from pathlib import Path

import jsonfile
import scenario
import util
from misctypes import MonogenError, Status
from scenario import Scenario

log = logging.getLogger(util.get_progname())
messager = util.Messager(util.get_progname())
user_dirs = util.AppDirsPathlib('monogen')

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


class Proc():
    """Program process state information."""
    def __init__(self, args):
        self.args = args
        self.exit_code = EXIT_OK

    def overrides(self):
        a = self.args
        return dict(box=a.box, m_max=a.mmax, eta=a.seed_eta, places=a.places)

    def output(self, report):
        """Print a report as JSON or text; write it to --outdir if given."""
        if self.args.outdir:
            path = Path(self.args.outdir) / f'{report["scenario"]}.json'
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open('w') as fp:
                jsonfile.write_json(fp, report)
            messager.verbose(f'Wrote: {path}')
        if self.args.json:
            messager.msg(jsonfile.dumps(report))
        else:
            show_report(report, verbose=self.args.verbose)
        if report['status'] != 'ok':
            self.exit_code = max(self.exit_code, EXIT_FAILED)

    def execute(self, sc):
        """Run a scenario; add wall-clock seconds with --timing."""
        start = time.perf_counter()
        report = scenario.execute(sc)
        if self.args.timing:
            report['elapsed'] = round(time.perf_counter() - start, 3)
        return report

    def cmd_run(self):
        """Run scenario files."""
        for path in self.args.scenario or []:
            sc = Scenario.read(path).override(**self.overrides())
            self.output(self.execute(sc))

    def cmd_show(self):
        """Validate scenario files and show what they would run."""
        rows = []
        for path in self.args.scenario or []:
            sc = Scenario.read(path)
            rows.append([sc.name, sc.task, sc.backend,
                         f'F_{sc.ctx.q}', len(sc.tower),
                         util.fmt_strings(sorted(sc.params))])
        messager.msg(util.fmt_table(rows, headers=['name', 'task', 'backend',
                                                   'field', 'levels',
                                                   'params']))

    def _run_task(self, task, params):
        sc = Scenario.from_dict(dict(task=task, params=params), name=task)
        sc.override(**self.overrides())
        self.output(self.execute(sc))

    def cmd_verify_a1(self):
        """Check the Example A1 family."""
        self._run_task('verify-a1', {})

    def cmd_verify_33(self):
        """Check the eta family."""
        self._run_task('verify-33', {})

    def cmd_verify_b(self):
        """Check Example B through the symmetric backend."""
        self._run_task('verify-b', {})

    def cmd_tasks(self):
        """List scenario tasks and their parameters."""
        rows = [[t, util.fmt_strings(sorted(scenario.TASK_PARAMS[t]))]
                for t in scenario.TASKS]
        messager.msg(util.fmt_table(rows, headers=['task', 'params']))

    @classmethod
    def cmds(cls):
        return {x.split('_', 1)[1]: x for x in dir(cls) if
                x.startswith('cmd_')}

    def run_cmd(self, cmd):
        """Run command."""
        name = self.cmds()[cmd]
        f = getattr(self, name)
        f()


def show_report(report, verbose=0):
    """Human-readable report."""
    result = report['result']
    mark = util.checkmark(report['status'] == 'ok')
    messager.msg(f'{mark}{report["scenario"]} ({report["task"]})')
    if report['task'] in scenario.VERIFY_TASKS:
        rows = []
        for c in result['checks']:
            status = Status(c['status'])
            if status == Status.passed and not verbose:
                continue
            items = sorted(c['witness'].items())
            witness = util.fmt_strings(f'{k}={v}' for k, v in items)
            rows.append([status.mark(), c['name'], witness])
        if rows:
            messager.msg(util.fmt_table(rows))
        summary = util.fmt_strings(f'{k}: {v}'
                                   for k, v in result['summary'].items())
        messager.msg(f'    {summary}')
        return
    rows = [[k, _short(v)] for k, v in sorted(result.items())]
    messager.msg(util.fmt_table(rows))


def _short(value, width=72):
    text = str(value)
    if len(text) > width:
        text = text[:width - 3] + '...'
    return text


def get_config_paths():
    """Return default configuration files."""
    dirnames = [user_dirs.user_config_dir, Path('.')]
    filename = 'monogen.cfg'
    paths = [Path(x) / filename for x in dirnames]
    return [x for x in paths if x.exists()]


def parse_args(argv=None):
    """Parse arguments."""
    epilog = 'Long options can be abbreviated unambigously'
    parser = util.get_basic_parser(description=__doc__, epilog=epilog)
    parser.add('-c', '--commands', nargs='+', choices=Proc.cmds().keys(),
               default=['run'], help='commands')
    parser.add('scenario', nargs='*', type=Path,
               help='scenario files')
    parser.add('--json', action='store_true',
               help='print JSON reports')
    parser.add('--outdir', type=Path,
               help='also write JSON reports into this directory')
    parser.add('--timing', action='store_true',
               help='include wall-clock time in reports')
    parser.add('--box', type=int,
               help='search box (search and unit-solve tasks)')
    parser.add('--mmax', type=int,
               help='largest m for the verify tasks')
    parser.add('--seed-eta',
               help='eta polynomial for the eta family')
    parser.add('--places',
               help='comma separated places, e.g. inf,x')
    prefix = parser.fromfile_prefix_chars[0]
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = [f'{prefix}{x}' for x in get_config_paths()] + argv
    return parser.parse_args(argv)


def main(argv=None):
    """Main."""
    args = parse_args(argv)
    logging.basicConfig(filename=args.logfile,
                        level=util.get_loglevel(args.loglevel),
                        format='%(levelname)s %(name)s: %(message)s')
    messager.verbosity = args.verbose
    proc = Proc(args)
    try:
        for cmd in args.commands:
            proc.run_cmd(cmd)
    except MonogenError as e:
        log.error('%s', e)
        messager.msg(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    return proc.exit_code


def _entry():
    sys.exit(main())


if __name__ == '__main__':
    _entry()
