import sys

from spdc_hom.cli import main

sys.exit(main())
