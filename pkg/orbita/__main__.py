import sys

from orbita.main import main

sys.exit(main())
