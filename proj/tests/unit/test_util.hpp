#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace test_util {

// Unique scratch directory, removed on scope exit.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 gen{std::random_device{}()};
        const auto base = std::filesystem::temp_directory_path();
        do {
            path_ = base / ("geolex-test-" + std::to_string(gen()));
        } while (!std::filesystem::create_directory(path_));
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace test_util
