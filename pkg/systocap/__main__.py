# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

import sys

from .cli import main

sys.exit(main())
