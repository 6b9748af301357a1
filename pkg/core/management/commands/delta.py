"""
Print delta_m = e_m - H_{m+1}/log 2 and its running maximum.

Usage:
    python manage.py delta --to 20
    python manage.py delta --from 1 --to 10 --digits-shown 20
"""

from django.conf import settings
from django.core.management.base import BaseCommand

from core.reports import TABLE2_DIGITS, delta_rows, render_rows

from ._common import (
    add_format_argument,
    add_range_arguments,
    apply_verbosity,
    check_range,
    usage_error,
)


class Command(BaseCommand):
    help = 'Print truncated delta_m with the running maximum mu_m'

    def add_arguments(self, parser):
        add_range_arguments(parser, default_from=0, default_to=20)
        parser.add_argument(
            '--digits-shown',
            type=int,
            default=TABLE2_DIGITS,
            dest='digits_shown',
            help=f'Truncated digits per value (default: {TABLE2_DIGITS})'
        )
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        m_from, m_to = options['m_from'], options['m_to']
        check_range(m_from, m_to, settings.GAMMA_EXACT_TRACK_CAP)
        digits_shown = options['digits_shown']
        if not 1 <= digits_shown <= settings.GAMMA_MAX_DIGITS:
            raise usage_error(f'--digits-shown must lie in [1, {settings.GAMMA_MAX_DIGITS}]')

        rows = delta_rows(m_from, m_to, digits_shown)
        self.stdout.write(
            render_rows(rows, ('m', 'delta', 'mu', 'mu_at'), options['output_format'])
        )
