import json
import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from dotenv import dotenv_values
from rest_framework.exceptions import ValidationError

from exceptions import GraphConfigError, SegmenterError
from graph.models import GraphConfig

logger = logging.getLogger(__name__)

# options every Django command carries; never part of the effective config
DJANGO_OPTIONS = frozenset({
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks',
    'stdout', 'stderr', 'config',
})

TRUE_VALUES = frozenset({'1', 'true', 'yes', 'on'})
FALSE_VALUES = frozenset({'0', 'false', 'no', 'off'})


class UsageError(Exception):
    pass


def flatten_errors(detail):
    """One line out of a nested DRF error structure."""
    if isinstance(detail, dict):
        return '; '.join(f'{key}: {flatten_errors(value)}' for key, value in detail.items())
    if isinstance(detail, (list, tuple)):
        return '; '.join(flatten_errors(value) for value in detail)
    return str(detail)


def parse_bool(value):
    lowered = str(value).strip().lower()
    if lowered in TRUE_VALUES:
        return True
    if lowered in FALSE_VALUES:
        return False
    raise UsageError(f'expected a boolean, got {value!r}')


class SegmenterCommand(BaseCommand):
    """Base for the toolkit verbs.

    Option values come from, lowest first: app settings (``setting_defaults``),
    the ``--config`` file, explicit flags. Flags that take part in the layering
    default to None so an absent flag can be told apart from a given one.
    """
    requires_system_checks = []
    model_flags = False
    setting_defaults = {}

    def create_parser(self, prog_name, subcommand, **kwargs):
        self.parser = super().create_parser(prog_name, subcommand, **kwargs)
        return self.parser

    def add_arguments(self, parser):
        parser.add_argument('--config', help='key=value file with option overrides')
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--workers', type=int, default=None)
        if self.model_flags:
            parser.add_argument('--ext-emb', dest='ext_emb', default=None,
                                help='per-character external embedding file')
            parser.add_argument('--no-syntax', dest='no_syntax', action='store_const', const=True, default=None)
            parser.add_argument('--no-cwn', dest='no_cwn', action='store_const', const=True, default=None)
            parser.add_argument('--no-lexicon', dest='no_lexicon', action='store_const', const=True, default=None)
            parser.add_argument('--no-ngrams', dest='no_ngrams', action='store_const', const=True, default=None)
            parser.add_argument('--cwn-direction', dest='cwn_direction', choices=('forward', 'both'), default=None)
            parser.add_argument('--relation-grouping', dest='relation_grouping', choices=('combined', 'split'),
                                default=None)
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            options = self.resolve_options(options)
            self.effective_config = {k: v for k, v in options.items() if k not in DJANGO_OPTIONS}
            return self.run(**options)
        except UsageError as exc:
            raise CommandError(f'usage: {exc}', returncode=2)
        except ValidationError as exc:
            raise CommandError(f'invalid_config: {flatten_errors(exc.detail)}', returncode=2)
        except SegmenterError as exc:
            raise CommandError(str(exc), returncode=1)
        except OSError as exc:
            raise CommandError(f'io: {exc}', returncode=1)

    def run(self, **options):
        raise NotImplementedError

    def _actions(self):
        return {action.dest: action for action in self.parser._actions if action.dest != 'help'}

    def read_config_file(self, path):
        actions = self._actions()
        values = {}
        for key, raw in dotenv_values(path).items():
            dest = key.strip().lstrip('-').replace('-', '_').lower()
            if dest not in actions or dest in DJANGO_OPTIONS:
                raise UsageError(f'{path}: unknown option {key!r}')
            action = actions[dest]
            if raw is None:
                raise UsageError(f'{path}: option {key!r} has no value')
            if action.const is not None and action.nargs == 0:
                values[dest] = action.const if parse_bool(raw) else None
            elif action.type is not None:
                try:
                    values[dest] = action.type(raw)
                except ValueError:
                    raise UsageError(f'{path}: bad value {raw!r} for {key!r}')
            else:
                values[dest] = raw
            if action.choices is not None and values[dest] not in action.choices:
                raise UsageError(f'{path}: {key!r} must be one of {list(action.choices)}')
        return values

    def resolve_options(self, options):
        options = dict(options)
        if options.get('config'):
            if not Path(options['config']).is_file():
                raise UsageError(f'config file {options["config"]} not found')
            for dest, value in self.read_config_file(options['config']).items():
                if options.get(dest) is None:
                    options[dest] = value
        for dest, setting in self.setting_defaults.items():
            if options.get(dest) is None:
                options[dest] = getattr(settings, setting)
        for flag in ('no_syntax', 'no_cwn', 'no_lexicon', 'no_ngrams'):
            if flag in options:
                options[flag] = bool(options[flag])
        if options.get('workers') is not None and options['workers'] < 1:
            raise UsageError('--workers must be at least 1')
        return options

    def graph_options(self, options):
        return {
            'use_syntax_subgraph': not options.get('no_syntax'),
            'use_cwn_subgraph': not options.get('no_cwn'),
            'use_lexicon': not options.get('no_lexicon'),
            'use_ngrams': not options.get('no_ngrams'),
            'cwn_direction': options.get('cwn_direction') or settings.GRAPH_CWN_DIRECTION,
            'relation_grouping': options.get('relation_grouping') or settings.GRAPH_RELATION_GROUPING,
        }

    def graph_config(self, options):
        """GraphConfig of the resolved options; a contradictory flag set is a usage error."""
        try:
            return GraphConfig(**self.graph_options(options))
        except GraphConfigError as exc:
            raise UsageError(exc.message) from exc

    def write_config_echo(self, output_path, extra=None):
        """Write <output>.config.json next to a file artifact."""
        record = dict(self.effective_config)
        if extra:
            record.update(extra)
        echo = Path(f'{output_path}.config.json')
        echo.write_text(json.dumps(record, ensure_ascii=False, indent=2, sort_keys=True, default=str) + '\n',
                        encoding='utf-8')
        return echo

    def log_config(self):
        logger.info('effective config: %s', json.dumps(self.effective_config, ensure_ascii=False,
                                                       sort_keys=True, default=str))

    def emit(self, text):
        self.stdout.write(text, ending='')
