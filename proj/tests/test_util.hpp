#pragma once

#include <doctest.h>

#include <cmath>

#define CHECK_NEAR(actual, expected, tol)                                                  \
    do {                                                                                   \
        const double pslab_a_ = (actual);                                                  \
        const double pslab_e_ = (expected);                                                \
        INFO("actual = " << pslab_a_ << ", expected = " << pslab_e_ << ", tol = " << (tol)); \
        CHECK(std::abs(pslab_a_ - pslab_e_) <= (tol));                                     \
    } while (0)
