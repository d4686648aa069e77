"""DataLad Hamiltonian engineering extension"""

__docformat__ = 'restructuredtext'

from .version import __version__


# defines a datalad command suite
# this symbol must be identified as a setuptools entrypoint
# to be found by datalad
command_suite = (
    # description of the command suite, displayed in cmdline help
    "DataLad Hamiltonian engineering command suite",
    [
        (
            'datalad_hamiltonian.run',
            'HamiltonianRun',
            'hamiltonian-run',
            'hamiltonian_run'
        ),
        (
            'datalad_hamiltonian.selfcheck',
            'HamiltonianSelfcheck',
            'hamiltonian-selfcheck',
            'hamiltonian_selfcheck'
        ),
    ]
)


from datalad import setup_package
from datalad import teardown_package
