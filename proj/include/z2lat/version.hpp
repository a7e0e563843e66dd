#pragma once

#define Z2LAT_VERSION "0.1.0"
