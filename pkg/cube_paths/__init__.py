from warnings import filterwarnings
filterwarnings('ignore', 'Not using MPI')

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"
