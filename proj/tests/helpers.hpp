#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <string>

namespace testutil {

// Fresh directory under the system temp root, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        const auto base = std::filesystem::temp_directory_path();
        path_ = (base / ("netslice-" + tag + "-" + std::to_string(::getpid()) + "-" +
                         std::to_string(counter++)))
                    .string();
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::string& str() const { return path_; }
    std::string sub(const std::string& name) const { return path_ + "/" + name; }

  private:
    std::string path_;
};

} // namespace testutil
