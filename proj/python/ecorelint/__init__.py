"""Ecore metamodel quality toolkit."""

try:
    from ._ecorelint import *  # noqa: F401,F403  (wheel layout)
    from ._ecorelint import __doc__ as _doc
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _ecorelint import *  # noqa: F401,F403
    from _ecorelint import __doc__ as _doc

__doc__ = _doc
