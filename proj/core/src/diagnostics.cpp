#include "stokeslab/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace stokeslab {

namespace {

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& handler_slot() {
    static WarningHandler h;
    return h;
}

}  // namespace

void set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(handler_mutex());
    handler_slot() = std::move(handler);
}

void reset_warning_handler() {
    std::lock_guard lock(handler_mutex());
    handler_slot() = nullptr;
}

void warn(const std::string& message) {
    std::lock_guard lock(handler_mutex());
    if (handler_slot()) {
        handler_slot()(message);
    } else {
        std::cerr << "stokeslab warning: " << message << '\n';
    }
}

}  // namespace stokeslab
