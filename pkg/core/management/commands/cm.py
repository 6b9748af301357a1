"""
Print the exact coefficients c_m(s) for an integer s >= 1.

Usage:
    python manage.py cm --s 2 --to 10
"""

from django.conf import settings
from django.core.management.base import BaseCommand

from core.reports import cm_rows, render_rows

from ._common import (
    add_format_argument,
    add_range_arguments,
    apply_verbosity,
    check_range,
    usage_error,
)


class Command(BaseCommand):
    help = 'Print exact c_m(s) for a range of m'

    def add_arguments(self, parser):
        parser.add_argument(
            '--s',
            type=int,
            default=1,
            help='Integer argument s >= 1 (default: 1)'
        )
        add_range_arguments(parser, default_from=0, default_to=20)
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        s = options['s']
        if s < 1:
            raise usage_error(f'--s must be >= 1, got {s}')
        m_from, m_to = options['m_from'], options['m_to']
        check_range(m_from, m_to, settings.GAMMA_EXACT_TRACK_CAP)

        rows = cm_rows(s, m_from, m_to)
        fmt = options['output_format']
        columns = ('value',) if fmt == 'plain' else ('m', 'value')
        self.stdout.write(render_rows(rows, columns, fmt))
