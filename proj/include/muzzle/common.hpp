#pragma once

#include <cstdarg>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace muzzle {

// Error taxonomy maps onto CLI exit codes: ArgumentError -> 1,
// DataError/IoError/ParseError -> 2 (see tools/muzzle_main.cpp).
class ArgumentError : public std::runtime_error {
public:
    explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string strformat(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

void log_warn(const std::string& msg);
void log_info(const std::string& msg);
// Silences log output below the given level: 0 = everything, 1 = warnings only, 2 = nothing.
void set_log_level(int level);

// "1.2 GB", "45.3 MB", "712 B"
std::string human_bytes(std::uint64_t bytes);

// "1 hr 12 min", "53 min", "42 s"
std::string human_duration(double seconds);

} // namespace muzzle
