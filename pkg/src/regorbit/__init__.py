"""Regular orbits of linear group actions and regular characters of PRA groups.

Submodules:

``ffla``      linear algebra over prime fields
``grp``       finite groups as multiplication tables
``cyclotomic`` exact cyclotomic integers
``chartab``   Dixon-Schneider character tables
``gmod``      group modules: orbits, homogeneous components, Hom spaces
``dade``      certified regular vectors for ``B x C`` actions
``scen``      PRA scenarios, hypotheses (a)-(d) and the character check
``cli``       JSON command line front end
"""

from importlib import resources

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a bundled catalog file, e.g. ``data_path("e1.json")``."""
    return resources.files(__name__).joinpath("data", name)
