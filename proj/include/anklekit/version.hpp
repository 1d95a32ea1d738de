#pragma once

#define ANKLEKIT_VERSION "1.0.0"
