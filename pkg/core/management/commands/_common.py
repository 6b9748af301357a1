"""
Argument and output helpers shared by the series commands.

Exit codes: 2 for invalid flags or ranges (argparse uses 2 as well), 3 when a
plan cannot meet the request within the configured caps, 1 when a
verification check fails, 4 when an identical request is already running.
"""

import logging

from django.core.management.base import CommandError

from core.reports import FORMATS

USAGE_ERROR = 2
PLAN_ERROR = 3
CHECK_FAILED = 1
BUSY = 4


def usage_error(message):
    return CommandError(message, returncode=USAGE_ERROR)


def plan_error(message):
    return CommandError(message, returncode=PLAN_ERROR)


def add_format_argument(parser):
    parser.add_argument(
        '--format',
        choices=FORMATS,
        default='plain',
        dest='output_format',
        help='Output format (default: plain)'
    )


def add_range_arguments(parser, default_from=0, default_to=20):
    parser.add_argument(
        '--from',
        type=int,
        default=default_from,
        dest='m_from',
        help=f'First index (default: {default_from})'
    )
    parser.add_argument(
        '--to',
        type=int,
        default=default_to,
        dest='m_to',
        help=f'Last index, inclusive (default: {default_to})'
    )


def check_range(m_from, m_to, cap):
    if m_from < 0:
        raise usage_error(f'--from must be >= 0, got {m_from}')
    if m_to < m_from:
        raise usage_error(f'--to ({m_to}) must be >= --from ({m_from})')
    if m_to > cap:
        raise usage_error(f'--to must be <= {cap}, got {m_to}')


def apply_verbosity(options):
    """--verbosity 2 or more shows the per-100-terms progress lines."""
    if options.get('verbosity', 1) >= 2:
        logging.getLogger('core').setLevel(logging.DEBUG)
