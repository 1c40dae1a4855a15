from disknorm.cli import main
import sys
sys.exit(main())
