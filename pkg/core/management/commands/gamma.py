"""
Compute Euler's constant with a rigorous error bound.

Usage:
    python manage.py gamma --digits 100
    python manage.py gamma --digits 1000 --level 4 --format json
    python manage.py gamma --level 2 --terms 1 --digits-shown 6
    python manage.py gamma --digits 5000 --async
"""

import json

from django.core.management.base import BaseCommand, CommandError

from core.series import PlanError
from core.tasks import build_plan, compute_gamma_digits

from ._common import (
    BUSY,
    add_format_argument,
    apply_verbosity,
    plan_error,
    usage_error,
)


class Command(BaseCommand):
    help = 'Compute gamma to D truncated digits, or a forced partial sum of the level series'

    def add_arguments(self, parser):
        parser.add_argument(
            '--digits',
            type=int,
            help='Decimal digits to compute (plans level and term count)'
        )
        parser.add_argument(
            '--level',
            type=int,
            help='Series level (default: chosen from the cost model)'
        )
        parser.add_argument(
            '--terms',
            type=int,
            help='Forced number of e_m terms (needs --level)'
        )
        parser.add_argument(
            '--digits-shown',
            type=int,
            dest='digits_shown',
            help='Digits printed for a forced partial sum'
        )
        parser.add_argument(
            '--cost',
            type=float,
            help='Cost exponent c in [1, 3] for the level choice'
        )
        add_format_argument(parser)
        parser.add_argument(
            '--async',
            action='store_true',
            dest='run_async',
            help='Run as Celery task (async)'
        )

    def validate(self, options):
        digits, terms = options['digits'], options['terms']
        level, cost = options['level'], options['cost']
        digits_shown = options['digits_shown']

        if digits is None and terms is None:
            raise usage_error('one of --digits or --terms is required')
        if digits is not None and terms is not None:
            raise usage_error('--digits and --terms are mutually exclusive')
        if level is not None and level < 2:
            raise usage_error(f'--level must be >= 2, got {level}')
        if cost is not None and not 1 <= cost <= 3:
            raise usage_error(f'--cost must lie in [1, 3], got {cost}')

        if terms is not None:
            if level is None:
                raise usage_error('--terms needs --level')
            if terms < 0:
                raise usage_error(f'--terms must be >= 0, got {terms}')
            if cost is not None:
                raise usage_error('--cost only applies to --digits')
            if digits_shown is not None and digits_shown < 1:
                raise usage_error(f'--digits-shown must be >= 1, got {digits_shown}')
        else:
            if digits < 1:
                raise usage_error(f'--digits must be >= 1, got {digits}')
            if digits_shown is not None:
                raise usage_error('--digits-shown only applies to --terms')

    def handle(self, *args, **options):
        apply_verbosity(options)
        self.validate(options)
        request = {
            'digits': options['digits'],
            'level': options['level'],
            'cost': options['cost'],
            'terms': options['terms'],
            'digits_shown': options['digits_shown'],
        }

        if options['run_async']:
            try:
                build_plan(**request)
            except PlanError as e:
                raise plan_error(str(e))
            result = compute_gamma_digits.delay(**request)
            self.stdout.write(
                self.style.SUCCESS(
                    f'Task dispatched: {result.id}'
                )
            )
            return

        try:
            payload = compute_gamma_digits(**request)
        except PlanError as e:
            raise plan_error(str(e))
        except ValueError as e:
            raise usage_error(str(e))

        if payload is None:
            raise CommandError(
                'An identical request is already running', returncode=BUSY
            )

        if request['terms'] is None and not payload['digits_certain']:
            self.stderr.write(
                self.style.WARNING(
                    f"Last printed digit is not certified by the error bound "
                    f"{payload['error_bound']}"
                )
            )

        fmt = options['output_format']
        if fmt == 'json':
            self.stdout.write(json.dumps(payload, ensure_ascii=False))
        elif fmt == 'latex':
            self.stdout.write(
                f"{payload['level']} & {payload['terms']} & {payload['value']} & "
                f"{payload['error_bound']} \\\\"
            )
        else:
            self.stdout.write(payload['value'])
            self.stdout.write(
                f"error_bound={payload['error_bound']} level={payload['level']} "
                f"terms={payload['terms']} frac_bits={payload['frac_bits']}"
            )
