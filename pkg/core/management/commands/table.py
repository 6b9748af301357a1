"""
Reproduce the three published tables.

Usage:
    python manage.py table --which 1
    python manage.py table --which 3 --format latex

Table 1 prints each partial sum truncated to the digits its rigorous bound
covers, next to the digit count of the published row.
"""

from django.conf import settings
from django.core.management.base import BaseCommand

from core.reports import (
    TABLE_COLUMNS,
    render_rows,
    table1_rows,
    table2_rows,
    table3_rows,
)

from ._common import add_format_argument, apply_verbosity


class Command(BaseCommand):
    help = 'Print Table 1 (approximations), 2 (delta_m) or 3 (e_m)'

    def add_arguments(self, parser):
        parser.add_argument(
            '--which',
            type=int,
            choices=sorted(TABLE_COLUMNS),
            required=True,
            help='Table number'
        )
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        which = options['which']

        if which == 1:
            rows = table1_rows(exact_track_cap=settings.GAMMA_EXACT_TRACK_CAP)
        elif which == 2:
            rows = table2_rows()
        else:
            rows = table3_rows()

        self.stdout.write(
            render_rows(rows, TABLE_COLUMNS[which], options['output_format'])
        )
