from .operators import ModelParams
from .spectrum import Eigenfunction, build_eigenfunction, level_basis
from .symfun import Partition, SymPoly, VariableTag

__version__ = '0.1.0'

__all__ = ['ModelParams', 'Eigenfunction', 'build_eigenfunction',
           'level_basis', 'Partition', 'SymPoly', 'VariableTag']
