import argparse
import logging
import sys

from tgm_fdtd import TgmFdtdException, __version__
from tgm_fdtd.commands import CommandHandler, get_registered_commands
from tgm_fdtd.config import load_config

logger = logging.getLogger(__name__)

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like configuration errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, '{}: error: {}\n'.format(self.prog, message))


def build_parser():
    parser = ArgumentParser(prog='tgm-fdtd',
                            description='1D FDTD with Lorentz media: TGM and ADE runs, reflection and checks')
    parser.add_argument('command', choices=list(get_registered_commands()))
    parser.add_argument('--config', required=True, help='experiment configuration file')
    parser.add_argument('--out', default=None, help='CSV destination (default: [run] output, else stdout)')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=LOG_LEVELS[min(args.verbose, len(LOG_LEVELS) - 1)], stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        config = load_config(args.config)
        handler = CommandHandler.get_class_by_name(args.command)(config)
        destination = args.out or config.output
        if destination:
            with open(destination, 'w', newline='') as out:
                status = handler.handle(out, summary=sys.stdout)
            logger.info('wrote %s', destination)
        else:
            status = handler.handle(sys.stdout, summary=sys.stderr)
    except TgmFdtdException as e:
        logger.debug('command %s failed', args.command, exc_info=True)
        print('error: {}'.format(' '.join(str(a) for a in e.args)), file=sys.stderr)
        return 1
    except OSError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return 1
    return status
