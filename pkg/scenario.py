"""Scenario files: parse, validate and execute one task."""

import dataclasses
import logging
from pathlib import Path

import frobsearch
import jsonfile
import monorder
import unitgrp
import verify
from funcfield import BivarSym, PlaceSet, parse_ratfunc
from gf import get_ctx
from misctypes import ConfigError, MonogenError
from tower import Tower, discriminant, get_sym_tower

log = logging.getLogger(__name__)

TASKS = ('disc', 'order-eq', 'search', 'unit-solve', 'ef', 'verify-a1',
         'verify-33', 'verify-b', 'bounds', 'addendum')
TOP_KEYS = {'name', 'field', 'backend', 'tower', 'elements', 'places',
            'task', 'params'}
FIELD_KEYS = {'p', 'k', 'modulus'}
LEVEL_KEYS = {'label', 'poly', 'assume'}
BACKENDS = ('tower', 'symmetric')
TASK_PARAMS = {
    'disc': {'element', 'method'},
    'order-eq': {'s', 't'},
    'search': {'s', 't', 'box', 'prefilter', 'ef_bound'},
    'unit-solve': {'generators', 'box', 'height_bound', 'brute_force'},
    'ef': {'s', 't', 'bound'},
    'verify-a1': {'m_max', 'k_max'},
    'verify-33': {'eta', 'm_max'},
    'verify-b': {'i_max', 'j_max'},
    'bounds': {'d', 'p', 'q_K', 'S_size', 'q_L', 'r'},
    'addendum': {'s', 't', 'bound'},
    }
VERIFY_TASKS = ('verify-a1', 'verify-33', 'verify-b')


def _reject_unknown(d, allowed, where):
    if not isinstance(d, dict):
        raise ConfigError(f'{where}: expected an object')
    extra = set(d) - set(allowed)
    if extra:
        raise ConfigError(f'{where}: unknown keys {sorted(extra)}')


@dataclasses.dataclass
class Scenario:
    """A validated scenario; elements are parsed lazily in context."""
    name: str
    task: str
    params: dict
    field: dict = dataclasses.field(default_factory=lambda: dict(p=2))
    backend: str = 'tower'
    tower: list = dataclasses.field(default_factory=list)
    elements: dict = dataclasses.field(default_factory=dict)
    places: str = ''

    @classmethod
    def from_dict(cls, d, name=None):
        _reject_unknown(d, TOP_KEYS, 'scenario')
        task = d.get('task')
        if task not in TASKS:
            raise ConfigError(f'Unknown task {task!r}; one of {TASKS}')
        params = dict(d.get('params', {}))
        _reject_unknown(params, TASK_PARAMS[task], f'params of {task}')
        field = dict(d.get('field', {'p': 2}))
        _reject_unknown(field, FIELD_KEYS, 'field')
        if 'p' not in field:
            raise ConfigError('field: missing p')
        backend = d.get('backend', 'tower')
        if backend not in BACKENDS:
            raise ConfigError(f'Unknown backend {backend!r}')
        levels = list(d.get('tower', []))
        for lv in levels:
            _reject_unknown(lv, LEVEL_KEYS, 'tower level')
            if 'label' not in lv or 'poly' not in lv:
                raise ConfigError(f'Tower level needs label and poly: {lv}')
        elements = dict(d.get('elements', {}))
        places = d.get('places', '')
        if isinstance(places, list):
            places = ','.join(places)
        return cls(name=d.get('name', name or 'scenario'), task=task,
                   params=params, field=field, backend=backend,
                   tower=levels, elements=elements, places=places)

    @classmethod
    def read(cls, path):
        path = Path(path)
        try:
            with path.open() as fp:
                d = jsonfile.read_json(fp)
        except (OSError, ValueError) as e:
            raise ConfigError(f'Cannot read scenario {path}: {e}') from e
        return cls.from_dict(d, name=path.stem)

    def override(self, box=None, m_max=None, eta=None, places=None):
        """Apply command line overrides."""
        if box is not None:
            if self.task == 'search':
                self.params['box'] = [box, box]
            elif self.task == 'unit-solve':
                self.params['box'] = box
        if m_max is not None and self.task in ('verify-a1', 'verify-33'):
            self.params['m_max'] = m_max
        if eta is not None and self.task == 'verify-33':
            self.params['eta'] = eta
        if places is not None:
            self.places = places
        return self

    # Context.

    @property
    def ctx(self):
        f = self.field
        modulus = f.get('modulus')
        return get_ctx(f['p'], f.get('k', 1),
                       tuple(modulus) if modulus else None)

    def build_tower(self):
        if self.backend == 'symmetric':
            return get_sym_tower(self.ctx)
        return Tower.build(self.ctx, self.tower)

    def element(self, host, key):
        name = self.params.get(key, key)
        text = self.elements.get(name, name)
        try:
            if self.backend == 'symmetric':
                return BivarSym.parse(host.ctx, text)
            return host.parse(text)
        except (ValueError, KeyError) as e:
            raise ConfigError(f'Cannot parse element {name}: {e}') from e

    def place_set(self):
        if not self.places:
            return None
        return PlaceSet.parse(self.ctx, self.places)


# Task execution.

def _task_disc(sc):
    host = sc.build_tower()
    t = sc.element(host, 'element')
    method = sc.params.get('method', 'auto')
    if isinstance(t, BivarSym):
        disc = host.discriminant(t)
    else:
        disc = discriminant(t, method=method)
    return dict(element=t, discriminant=disc, method=method), True


def _task_order_eq(sc):
    host = sc.build_tower()
    s, t = sc.element(host, 's'), sc.element(host, 't')
    order = monorder.make_order(s, sc.place_set())
    verdict = monorder.orders_equal(t, order)
    contained = monorder.in_order(t, order)
    return dict(s=s, t=t, verdict=verdict, t_in_O_s=contained), True


def _task_search(sc):
    host = sc.build_tower()
    s, t = sc.element(host, 's'), sc.element(host, 't')
    M, N = sc.params.get('box', [8, 8])
    result = frobsearch.enumerate_M(s, t, M, N,
                                    prefilter=sc.params.get('prefilter',
                                                            True))
    patterns = frobsearch.fit_patterns(result) if result.pairs else []
    periods = frobsearch.compute_periods(
        s, t, sc.params.get('ef_bound', frobsearch.DEFAULT_EF_BOUND))
    ok = not result.closure_violations and not result.degenerate_outside
    return dict(s=s, t=t, search=result, patterns=patterns,
                pattern_note='consistent with the pairs in the box only',
                quotients=frobsearch.quotient_profile(result),
                periods=periods), ok


def _task_unit_solve(sc):
    ctx = sc.ctx
    gens = [parse_ratfunc(ctx, g) for g in sc.params.get('generators', [])]
    group = unitgrp.build_group(gens)
    families = unitgrp.solve_xy1(group, sc.params.get('height_bound'))
    out = dict(group=group, families=families)
    ok = True
    if sc.params.get('brute_force', True):
        box = sc.params.get('box', 4)
        brute = {(str(x), str(y)) for x, y in unitgrp.brute_force_xy1(group,
                                                                     box)}
        found = {(str(x), str(y)) for f in families
                 for x, y in f.members_in_box(box)}
        ok = brute == found
        out.update(box=box, brute_force=sorted(brute),
                   missing=sorted(brute - found), extra=sorted(found - brute))
    return out, ok


def _task_ef(sc):
    host = sc.build_tower()
    s, t = sc.element(host, 's'), sc.element(host, 't')
    periods = frobsearch.compute_periods(
        s, t, sc.params.get('bound', frobsearch.DEFAULT_EF_BOUND))
    return dict(periods=periods), True


def _task_addendum(sc):
    host = sc.build_tower()
    s, t = sc.element(host, 's'), sc.element(host, 't')
    report = frobsearch.addendum_predicates(
        s, t, sc.params.get('bound', frobsearch.DEFAULT_EF_BOUND))
    return report, True


def _task_bounds(sc):
    p = sc.params
    try:
        out = frobsearch.bound_calculator(p['d'], p['p'], p['q_K'],
                                          p['S_size'], q_L=p.get('q_L'),
                                          r=p.get('r'))
    except KeyError as e:
        raise ConfigError(f'bounds: missing parameter {e}') from e
    except ValueError as e:
        raise ConfigError(f'bounds: {e}') from e
    return {k: str(v) for k, v in out.items()}, True


def _task_verify(sc):
    p = sc.params
    if sc.task == 'verify-a1':
        report = verify.verify_example_A1(p.get('m_max', 3), p.get('k_max'))
    elif sc.task == 'verify-33':
        report = verify.verify_section_3_3(p.get('eta', verify.DEFAULT_ETA),
                                           p.get('m_max',
                                                 verify.DEFAULT_M_MAX))
    else:
        report = verify.verify_example_B(p.get('i_max', 2), p.get('j_max', 2))
    return report.as_json(), report.passed


RUNNERS = {
    'disc': _task_disc,
    'order-eq': _task_order_eq,
    'search': _task_search,
    'unit-solve': _task_unit_solve,
    'ef': _task_ef,
    'addendum': _task_addendum,
    'bounds': _task_bounds,
    'verify-a1': _task_verify,
    'verify-33': _task_verify,
    'verify-b': _task_verify,
    }


def execute(sc):
    """Run the scenario task; return the report dictionary."""
    log.info('Running scenario %s: %s', sc.name, sc.task)
    try:
        result, ok = RUNNERS[sc.task](sc)
    except ConfigError:
        raise
    except MonogenError as e:
        log.error('Scenario %s failed: %s', sc.name, e)
        raise
    except ValueError as e:
        raise ConfigError(f'{sc.name}: {e}') from e
    result = jsonfile.to_plain(result)
    return dict(scenario=sc.name, task=sc.task, params=sc.params,
                status='ok' if ok else 'failed', result=result)
