"""
Print the exact coefficients e_m as canonical fractions.

Usage:
    python manage.py em --to 20
    python manage.py em --from 5 --to 5
    python manage.py em --from 1 --to 20 --format latex
"""

from django.conf import settings
from django.core.management.base import BaseCommand

from core.reports import em_rows, render_rows

from ._common import add_format_argument, add_range_arguments, apply_verbosity, check_range


class Command(BaseCommand):
    help = 'Print exact e_m for a range of m'

    def add_arguments(self, parser):
        add_range_arguments(parser, default_from=0, default_to=20)
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        m_from, m_to = options['m_from'], options['m_to']
        check_range(m_from, m_to, settings.GAMMA_EXACT_TRACK_CAP)

        rows = em_rows(m_from, m_to)
        fmt = options['output_format']
        columns = ('value',) if fmt == 'plain' else ('m', 'value')
        self.stdout.write(render_rows(rows, columns, fmt))
