import shlex

from IPython.core.magic import Magics, magics_class, line_magic

from .commands import COMMAND_WHITELIST, CommandInformation, run_command


@magics_class
class Gl2cqMagics(Magics):
    @line_magic
    def gl2cq(self, line):
        """Run a gl2cq command, e.g. ``%gl2cq gram --level 2``."""
        code = run_command(shlex.split(line))
        if code:
            print(f"Exit code {code}.")

    @line_magic
    def gl2cq_commands(self, line):
        """List the available gl2cq commands."""
        for info in COMMAND_WHITELIST:
            print(f"%{info.user_name:<24} {info.cls().parser.description or ''}")


def _command_magic(info: CommandInformation):
    def magic(line):
        code = run_command([info.name, *shlex.split(line)])
        if code:
            print(f"Exit code {code}.")

    magic.__doc__ = info.cls().parser.format_help()
    return magic


def load_ipython_extension(ipython):
    ipython.register_magics(Gl2cqMagics)
    for info in COMMAND_WHITELIST:
        ipython.register_magic_function(_command_magic(info), "line", info.user_name)


def unload_ipython_extension(ipython):
    pass
