"""
Run the verification suite.

Usage:
    python manage.py verify
    python manage.py verify --bounds 300
    python manage.py verify --oracle 10 --eta

With no scope flag every check runs with its default size. Exits 1 if any
check fails.
"""

import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.checks import (
    DEFAULT_BOUNDS_M,
    DEFAULT_CROSS_LEVEL_DIGITS,
    DEFAULT_ORACLE_M,
    run_bound_checks,
    run_cross_level_checks,
    run_eta_checks,
    run_oracle_checks,
)
from core.series import PlanError

from ._common import CHECK_FAILED, add_format_argument, apply_verbosity, plan_error, usage_error


class Command(BaseCommand):
    help = 'Verify the coefficient bounds, the derivative oracle, level agreement and eta(1) = log 2'

    def add_arguments(self, parser):
        parser.add_argument(
            '--bounds',
            type=int,
            metavar='M',
            help=f'Check the e_m bounds and the delta_m window for m = 0..M (default run: {DEFAULT_BOUNDS_M})'
        )
        parser.add_argument(
            '--oracle',
            type=int,
            metavar='M',
            help=f'Compare the derivative oracle with e_m for m = 1..M (default run: {DEFAULT_ORACLE_M})'
        )
        parser.add_argument(
            '--cross-level',
            type=int,
            metavar='D',
            dest='cross_level',
            help=f'Compare levels 2..7 at D digits (default run: {DEFAULT_CROSS_LEVEL_DIGITS})'
        )
        parser.add_argument(
            '--eta',
            action='store_true',
            help='Check the eta level series against log 2'
        )
        add_format_argument(parser)

    def handle(self, *args, **options):
        apply_verbosity(options)
        bounds, oracle = options['bounds'], options['oracle']
        cross_level, eta = options['cross_level'], options['eta']

        if bounds is None and oracle is None and cross_level is None and not eta:
            bounds, oracle = DEFAULT_BOUNDS_M, DEFAULT_ORACLE_M
            cross_level, eta = DEFAULT_CROSS_LEVEL_DIGITS, True

        if bounds is not None and not 0 <= bounds <= settings.GAMMA_EXACT_TRACK_CAP:
            raise usage_error(f'--bounds must lie in [0, {settings.GAMMA_EXACT_TRACK_CAP}]')
        if oracle is not None and not 1 <= oracle <= 64:
            raise usage_error('--oracle must lie in [1, 64]')
        if cross_level is not None and not 1 <= cross_level <= settings.GAMMA_MAX_DIGITS:
            raise usage_error(f'--cross-level must lie in [1, {settings.GAMMA_MAX_DIGITS}]')

        results = []
        if bounds is not None:
            results.append(run_bound_checks(bounds))
        if oracle is not None:
            results.append(run_oracle_checks(oracle))
        if cross_level is not None:
            try:
                results.append(
                    run_cross_level_checks(
                        cross_level,
                        exact_track_cap=settings.GAMMA_EXACT_TRACK_CAP,
                        max_terms=settings.GAMMA_MAX_TERMS,
                    )
                )
            except PlanError as e:
                raise plan_error(str(e))
        if eta:
            results.append(run_eta_checks())

        if options['output_format'] == 'json':
            self.stdout.write(
                json.dumps(
                    [
                        {'check': r.name, 'passed': r.passed, 'details': r.details}
                        for r in results
                    ]
                )
            )
        else:
            for result in results:
                style = self.style.SUCCESS if result.passed else self.style.ERROR
                self.stdout.write(style(f"{result.name}: {'PASS' if result.passed else 'FAIL'}"))
                for line in result.details:
                    self.stdout.write(f'  {line}')

        failed = [r.name for r in results if not r.passed]
        if failed:
            raise CommandError(
                f"Verification failed: {', '.join(failed)}", returncode=CHECK_FAILED
            )
