#include "muzzle/common.hpp"

#include <cstdio>
#include <vector>

namespace muzzle {

namespace {
int g_log_level = 0;
}

std::string strformat(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    int n = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out;
    if (n > 0) {
        std::vector<char> buf(static_cast<size_t>(n) + 1);
        std::vsnprintf(buf.data(), buf.size(), fmt, args);
        out.assign(buf.data(), static_cast<size_t>(n));
    }
    va_end(args);
    return out;
}

void set_log_level(int level) { g_log_level = level; }

void log_warn(const std::string& msg) {
    if (g_log_level <= 1) std::fprintf(stderr, "[warn] %s\n", msg.c_str());
}

void log_info(const std::string& msg) {
    if (g_log_level <= 0) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

std::string human_bytes(std::uint64_t bytes) {
    const char* units[] = {"B", "KB", "MB", "GB", "TB"};
    double v = static_cast<double>(bytes);
    int u = 0;
    while (v >= 1024.0 && u < 4) {
        v /= 1024.0;
        ++u;
    }
    if (u == 0) return strformat("%llu B", static_cast<unsigned long long>(bytes));
    return strformat("%.1f %s", v, units[u]);
}

std::string human_duration(double seconds) {
    if (seconds < 60.0) return strformat("%.0f s", seconds);
    long mins = static_cast<long>(seconds / 60.0 + 0.5);
    long hrs = mins / 60;
    mins %= 60;
    if (hrs > 0) return strformat("%ld hr %ld min", hrs, mins);
    return strformat("%ld min", mins);
}

} // namespace muzzle
