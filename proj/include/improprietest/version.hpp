#pragma once

#define IMPROPRIETEST_VERSION "1.0.0"
