#pragma once

#include <gtest/gtest.h>

#include "cat0/shapes.hpp"
#include "oracles.hpp"

namespace testing_cat0 {

using namespace cat0;

inline PolygonalDomain shape(const std::string& name, BoundaryMode mode = BoundaryMode::rounded, double r = 0.1) {
    for (const auto& b : shapes::bundled())
        if (b.name == name) return PolygonalDomain::create(b.vertices, r, std::nullopt, std::nullopt, mode);
    throw std::invalid_argument(name);
}

inline std::vector<oracle::P> to_oracle(std::span<const Vec2> v) {
    std::vector<oracle::P> out;
    for (auto p : v) out.push_back({p.x, p.y});
    return out;
}

#define EXPECT_ERROR_CODE(stmt, expected)                        \
    do {                                                         \
        try {                                                    \
            stmt;                                                \
            ADD_FAILURE() << "expected " << cat0::to_string(expected); \
        } catch (const cat0::Error& err_) {                      \
            EXPECT_EQ(err_.code(), expected) << err_.what();     \
        }                                                        \
    } while (0)

}  // namespace testing_cat0
