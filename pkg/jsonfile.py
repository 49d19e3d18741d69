"""JSON data files."""

import json
import logging
from enum import Enum
from fractions import Fraction

log = logging.getLogger(__name__)

REPORT_KEYS = {'scenario': str, 'task': str, 'status': str, 'result': dict}
REPORT_STATUSES = ('ok', 'failed')


def write_json(fp, obj):
    """Write JSON file."""
    json.dump(obj, fp, cls=MyJSONEncoder, ensure_ascii=False, indent=2,
              sort_keys=True)
    fp.write('\n')


def dumps(obj):
    return json.dumps(obj, cls=MyJSONEncoder, ensure_ascii=False, indent=2,
                      sort_keys=True)


def to_plain(obj):
    """obj as plain lists, dicts, strings and numbers."""
    return json.loads(dumps(obj))


def read_json(fp):
    """Read JSON file."""
    try:
        return json.load(fp)
    except json.decoder.JSONDecodeError:
        log.error('Error decoding JSON: %s', getattr(fp, 'name', fp))
        raise


class MyJSONEncoder(json.JSONEncoder):
    """Custom JSON encoder."""
    def __init__(self, *args, **kwargs):
        kwargs.update(default=self.default_decode)
        super().__init__(*args, **kwargs)

    def default_decode(self, o):
        """Return a serializable object for custom objects."""
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if hasattr(o, '_asdict'):
            return o._asdict()
        if hasattr(o, 'as_json'):
            return o.as_json()
        if isinstance(o, Enum):
            return o.value
        if isinstance(o, Fraction):
            return str(o)
        if hasattr(o, 'evalf'):
            # sympy numbers
            return str(o)
        try:
            it = iter(o)
        except TypeError:
            log.error('Cannot JSONify type %s: %s', type(o), o)
        else:
            return list(it)
        # Let the base class default method raise the TypeError.
        return super().default(o)


def validate_report(d):
    """Check a decoded report against the report layout; return problems."""
    problems = []
    if not isinstance(d, dict):
        return ['report is not an object']
    for key, typ in REPORT_KEYS.items():
        if key not in d:
            problems.append(f'missing key: {key}')
        elif not isinstance(d[key], typ):
            problems.append(f'{key}: expected {typ.__name__}')
    extra = set(d) - set(REPORT_KEYS) - {'params', 'elapsed'}
    if extra:
        problems.append(f'unknown keys: {sorted(extra)}')
    if d.get('status') not in REPORT_STATUSES:
        problems.append(f'invalid status: {d.get("status")!r}')
    return problems
