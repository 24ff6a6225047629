import psiparam
import psiparam.cli as cli


def main(_):
    print(psiparam.__version__)
    return cli.EXIT_SUCCESS
