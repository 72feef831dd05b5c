"""Entry point behind ``python -m qlab``.

``run(argv)`` dispatches to the qlab management commands and returns the exit
status instead of raising: 0 on success, 1 when a check or the library fails,
2 on usage errors.
"""
import logging
import os
import sys

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "dualpolar", "export", "history", "migrate")

USAGE = (
    "usage: python -m qlab <command> [options]\n"
    f"commands: {', '.join(COMMANDS)}\n"
    "run 'python -m qlab <command> --help' for the options of a command\n"
)


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stderr.write(USAGE)
        return 0 if argv else 2
    name = argv[0]
    if name not in COMMANDS:
        sys.stderr.write(f"unknown command {name!r}\n{USAGE}")
        return 2

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "qlabproject.settings")
    import django
    from django.core.management import get_commands, load_command_class

    django.setup()
    command = load_command_class(get_commands()[name], name)
    try:
        command.run_from_argv(["qlab", name] + argv[1:])
    except SystemExit as e:
        # argparse errors exit 2, CommandError exits with its returncode
        code = e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
        logger.debug(f"{name} exited with {code}")
        return code
    except Exception as e:
        logger.error(f"{name} failed: {str(e)}")
        sys.stderr.write(f"{name} failed: {str(e)}\n")
        return 1
    return 0
