#!/usr/bin/env python
"""Entry point for ``python manage.py moebius <subcommand>`` and the test runner."""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install requirements.txt into the active "
            "environment before running the moebius command."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
