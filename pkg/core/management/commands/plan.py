"""
Show the plan (level, terms, fractional bits, bounds) for a digit request
without evaluating the series.

Usage:
    python manage.py plan --digits 100
    python manage.py plan --digits 100 --cost 3 --format json
"""

import json
import time

from django.core.management.base import BaseCommand

from core.reports import format_magnitude, plan_payload
from core.series import PlanError
from core.tasks import build_plan

from ._common import add_format_argument, apply_verbosity, plan_error, usage_error


class Command(BaseCommand):
    help = 'Plan level, term count and precision for D digits'

    def add_arguments(self, parser):
        parser.add_argument(
            '--digits',
            type=int,
            required=True,
            help='Decimal digits to plan for'
        )
        parser.add_argument(
            '--cost',
            type=float,
            help='Cost exponent c in [1, 3] (default: GAMMA_DEFAULT_COST)'
        )
        parser.add_argument(
            '--level',
            type=int,
            help='Level override'
        )
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        digits, cost, level = options['digits'], options['cost'], options['level']
        if digits < 1:
            raise usage_error(f'--digits must be >= 1, got {digits}')
        if cost is not None and not 1 <= cost <= 3:
            raise usage_error(f'--cost must lie in [1, 3], got {cost}')
        if level is not None and level < 2:
            raise usage_error(f'--level must be >= 2, got {level}')

        start_time = time.perf_counter()
        try:
            plan = build_plan(digits=digits, level=level, cost=cost)
        except PlanError as e:
            raise plan_error(str(e))
        elapsed_ms = round((time.perf_counter() - start_time) * 1000, 3)
        payload = plan_payload(plan, elapsed_ms)

        fmt = options['output_format']
        if fmt == 'json':
            self.stdout.write(json.dumps(payload))
        elif fmt == 'latex':
            self.stdout.write(
                f"{plan.level} & {plan.terms} & {plan.frac_bits} & "
                f"{format_magnitude(plan.tail_bound)} \\\\"
            )
        else:
            self.stdout.write(
                f"level={plan.level} terms={plan.terms} frac_bits={plan.frac_bits} "
                f"tail_bound={format_magnitude(plan.tail_bound)} "
                f"error_bound={payload['error_bound']}"
            )
