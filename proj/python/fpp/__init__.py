"""Exact root-system, Weyl-group and Levi computations with parametric
fundamental-parallelepiped verification."""

try:
    from ._fpp import *  # noqa: F401,F403
    from ._fpp import __doc__ as _core_doc  # noqa: F401
except ImportError:  # running from a build tree where _fpp sits next to the package
    from _fpp import *  # noqa: F401,F403

__version__ = "0.1.0"
