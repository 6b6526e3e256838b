"""
THERMODARCY is an adaptive finite element toolkit for stationary Darcy flow coupled with heat
transport driven by Dirac point sources, with residual a posteriori error estimation.

.. include:: ../README.md
"""

__version__ = '1.0'
__author__ = 'Thermodarcy developers'
