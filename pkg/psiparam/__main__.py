#!/usr/bin/env python3
"""Usage:
    psiparam encode [options]
    psiparam decode [options]
    psiparam clock [options]
    psiparam collapse [options]
    psiparam check-det [options]
    psiparam gleason [options]
    psiparam walk [options]
    psiparam version

Routines:
    encode                  Writes a distribution {"p": [...]}
                            as Euler angles and as a wave-function
    decode                  Applies the Born rule to a wave-function
                            {"amplitudes": [...], "algebra": ...}
                            or to angles {"theta": [...]}
    clock                   Samples the probability clock as csv rows
                            t,p1,p2,psi1,psi2
    collapse                Collapses a wave-function or a density matrix
                            {"matrix": [...], "algebra": ...}
    check-det               Checks whether a transformation
                            {"matrix": [...], "algebra": ...}
                            maps deterministic ensembles
                            to deterministic ensembles
    gleason                 Searches the real pure state closest to
                            the expectations of diag(1, 0) and the
                            projection onto (1, 1) / sqrt(2)
    walk                    Writes the distribution of the complete paths
                            of a random walk
    version                 Prints the project version

Options:
    -i, --input <input>    path of the input document, "-" for stdin
                           or the json document itself
                           [default: -]
    -o, --output <output>  path of the output document, "-" for stdout
                           [default: -]
    -v, --verbose          print debug messages to stderr
    -s, --silent           print stderr to /dev/null

Clock options:
    --t-start <t>          first sampled time [default: 0]
    --t-end <t>            last sampled time [default: 3.141592653589793]
    --samples <n>          number of sampled times [default: 9]

Gleason options:
    --grid <n>             number of scanned states [default: 100000]
    --target-a <p>         expectation of diag(1, 0) [default: 0.5]
    --target-b <p>         expectation of the (1, 1) projection
                           [default: 0.5]

Walk options:
    --steps <n>            number of steps, read from the input
                           {"steps": n, "q": [...]} if omitted
    --q <q>                probability of a step up,
                           a single value or one per step
                           separated by commas
    --at <t>               write the position distribution
                           after t steps instead


License:
    psiparam
    This program comes with ABSOLUTELY NO WARRANTY.
    This is free software, and you are welcome to redistribute it
    under certain conditions.
"""
import sys

import docopt

import psiparam.cli as cli


def main(argv=None):
    try:
        options = docopt.docopt(__doc__, argv=argv)
    except docopt.DocoptExit as error:
        print(error, file=sys.stderr)
        return cli.EXIT_USAGE

    if options["version"]:
        import psiparam.version as version

        return version.main(options)

    return cli.main(options)


if __name__ == "__main__":
    sys.exit(main())
