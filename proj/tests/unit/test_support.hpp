#pragma once

#include <hurwitzkit/error.hpp>

#include <gtest/gtest.h>

#include <optional>

namespace hktest {

template <class F>
std::optional<hurwitzkit::ErrorKind> error_kind(F&& f)
{
    try {
        f();
    } catch (const hurwitzkit::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

} // namespace hktest

#define EXPECT_HK_ERROR(expr, kind) EXPECT_EQ(hktest::error_kind([&] { (void)(expr); }), hurwitzkit::ErrorKind::kind)
