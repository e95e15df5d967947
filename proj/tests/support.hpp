#pragma once

#include <optional>

#include "bergman/errors.hpp"

// The ErrorKind thrown by f, or nullopt when f returns normally.
template <class F>
std::optional<bergman::ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const bergman::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}
