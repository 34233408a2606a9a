#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace cooking_code {

template <class E>
struct Unexpected {
    E error;
};

template <class E>
Unexpected(E) -> Unexpected<E>;

/// Value-or-error return for rule checks that fail routinely during play.
/// Stand-in for std::expected until the toolchain moves past C++20.
template <class T, class E>
class Expected {
public:
    Expected(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
    Expected(Unexpected<E> err) : storage_(std::in_place_index<1>, std::move(err.error)) {}

    bool has_value() const noexcept { return storage_.index() == 0; }
    explicit operator bool() const noexcept { return has_value(); }

    T& value() & {
        if (!has_value()) throw std::logic_error("Expected::value() on error");
        return std::get<0>(storage_);
    }
    const T& value() const& {
        if (!has_value()) throw std::logic_error("Expected::value() on error");
        return std::get<0>(storage_);
    }
    T&& value() && {
        if (!has_value()) throw std::logic_error("Expected::value() on error");
        return std::get<0>(std::move(storage_));
    }
    const E& error() const {
        if (has_value()) throw std::logic_error("Expected::error() on value");
        return std::get<1>(storage_);
    }

    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }
    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }

private:
    std::variant<T, E> storage_;
};

/// Unit type for operations that only report success or an error.
struct Ok {
    friend bool operator==(Ok, Ok) = default;
};

}  // namespace cooking_code
