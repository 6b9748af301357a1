"""
Evaluate the Dirichlet eta function at an integer s >= 1 from its level-l
representation, with the tail and rounding bounds.

Usage:
    python manage.py eta --s 1 --level 2 --terms 40
    python manage.py eta --s 2 --level 3 --terms 40 --digits-shown 20
"""

import json

from django.core.management.base import BaseCommand

from core.reports import format_magnitude
from core.series import (
    PlanError,
    PrecisionCtx,
    eta_level_series,
    eta_tail_bound,
    frac_bits_for,
    fx_to_decimal,
)
from core.tasks import check_caps

from ._common import add_format_argument, apply_verbosity, plan_error, usage_error


class Command(BaseCommand):
    help = 'Evaluate eta(s) from the level series'

    def add_arguments(self, parser):
        parser.add_argument('--s', type=int, default=1, help='Integer s >= 1 (default: 1)')
        parser.add_argument('--level', type=int, default=2, help='Series level (default: 2)')
        parser.add_argument('--terms', type=int, default=40, help='Correction terms M (default: 40)')
        parser.add_argument(
            '--digits-shown',
            type=int,
            default=20,
            dest='digits_shown',
            help='Truncated digits printed (default: 20)'
        )
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        s, level = options['s'], options['level']
        terms, digits_shown = options['terms'], options['digits_shown']
        if s < 1:
            raise usage_error(f'--s must be >= 1, got {s}')
        if level < 2:
            raise usage_error(f'--level must be >= 2, got {level}')
        if terms < 0:
            raise usage_error(f'--terms must be >= 0, got {terms}')
        if digits_shown < 1:
            raise usage_error(f'--digits-shown must be >= 1, got {digits_shown}')
        try:
            check_caps(level=level, terms=terms, digits=digits_shown)
        except PlanError as e:
            raise plan_error(str(e))

        ctx = PrecisionCtx(frac_bits_for(digits_shown + 2, level, terms + s))
        value = eta_level_series(s, level, terms, ctx)
        payload = {
            'value': fx_to_decimal(value, digits_shown),
            's': s,
            'level': level,
            'terms': terms,
            'tail_bound': format_magnitude(eta_tail_bound(s, level, terms)),
            'rounding_bound': format_magnitude(value.error_bound()),
            'frac_bits': ctx.frac_bits,
        }

        fmt = options['output_format']
        if fmt == 'json':
            self.stdout.write(json.dumps(payload))
        elif fmt == 'latex':
            self.stdout.write(
                f"{s} & {level} & {terms} & {payload['value']} & {payload['tail_bound']} \\\\"
            )
        else:
            self.stdout.write(payload['value'])
            self.stdout.write(
                f"tail_bound={payload['tail_bound']} rounding_bound={payload['rounding_bound']} "
                f"level={level} terms={terms} frac_bits={ctx.frac_bits}"
            )
