"""Shared plumbing for the voting management commands."""
import csv
import io
import json
import logging
from dataclasses import dataclass, field
from functools import wraps

from django.core.management.base import BaseCommand, CommandError

from voting import conf
from voting.exceptions import PowerPolyError

logger = logging.getLogger('voting.commands')

FORMATS = ('text', 'json', 'csv')

# options every Django command carries; they are not part of a run
DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks',
}


@dataclass(frozen=True)
class RunManifest:
    """One command invocation: what to run, on which inputs, rendered how"""
    subcommand: str
    inputs: tuple = ()
    options: dict = field(default_factory=dict)
    output_format: str = 'text'

    @classmethod
    def from_options(cls, subcommand, options, inputs=()):
        picked = {k: v for k, v in options.items() if k not in DJANGO_OPTIONS}
        output_format = picked.pop('format', None) or 'text'
        if output_format not in FORMATS:
            raise CommandError(f'Unknown output format: {output_format}', returncode=2)
        return cls(subcommand=subcommand, inputs=tuple(inputs), options=picked, output_format=output_format)

    def get(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value


def command_errors(handle):
    """Decorator turning engine errors into CommandError with their exit status"""
    @wraps(handle)
    def _wrapped_handle(self, *args, **options):
        try:
            return handle(self, *args, **options)
        except PowerPolyError as exc:
            logger.debug('%s failed: %s', type(self).__module__, exc, exc_info=True)
            raise CommandError(f'{type(exc).__name__}: {exc}', returncode=exc.exit_code) from exc
    return _wrapped_handle


class PowerPolyCommand(BaseCommand):
    """Base for every voting command; subclasses implement `run(manifest)`"""
    default_format = 'text'

    @property
    def name(self):
        return type(self).__module__.rsplit('.', 1)[-1]

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            choices=FORMATS,
            default=self.default_format,
            help=f'Output format (default: {self.default_format})',
        )
        self.add_run_arguments(parser)

    def add_run_arguments(self, parser):
        pass

    @command_errors
    def handle(self, *args, **options):
        manifest = RunManifest.from_options(self.name, options, inputs=args)
        logger.debug('Running %s with %s', manifest.subcommand, manifest.options)
        self.run(manifest)

    def run(self, manifest):
        raise NotImplementedError('subclasses of PowerPolyCommand must provide a run() method')

    # output helpers

    def places(self, manifest):
        return manifest.get('decimals', conf.get('POWERPOLY_DECIMALS'))

    def write_json(self, payload):
        self.stdout.write(json.dumps(payload, indent=2))

    def write_json_line(self, payload):
        self.stdout.write(json.dumps(payload, separators=(',', ':')))

    def write_csv(self, rows, fieldnames):
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        self.stdout.write(buffer.getvalue(), ending='')

    def write_banner(self, title):
        self.stdout.write('=' * 60)
        self.stdout.write(title)
        self.stdout.write('=' * 60)
