"""Artin transfer patterns and descendant trees for finite 2-groups of type (4,4)."""

from .pcgroup import PcGroup, Subgroup, parse_pc_presentation
from .tree import Pool, census, expand, load, save

__all__ = ["PcGroup", "Subgroup", "parse_pc_presentation",
           "Pool", "census", "expand", "load", "save"]

__version__ = "0.1.0"
