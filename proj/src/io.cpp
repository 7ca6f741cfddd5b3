#include "tprh/io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tprh {
namespace io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& header,
               const std::vector<std::vector<Cell>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& line : comment_lines) out << "# " << line << "\n";
  for (std::size_t j = 0; j < header.size(); ++j) {
    out << (j ? "," : "") << csv_escape(header[j]);
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ",";
      if (row[j]) out << format_double(*row[j]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("digest context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.good()) {
    in.read(buf, sizeof(buf));
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

void write_manifest(const std::string& output_path, const std::string& command,
                    const std::map<std::string, std::string>& parameters) {
  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["parameters"] = parameters;
  manifest["tool_version"] = kToolVersion;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  manifest["timestamp"] = stamp;
  manifest["outputs"] = nlohmann::json::array(
      {{{"path", output_path}, {"sha256", sha256_file(output_path)}}});
  std::ofstream out(output_path + ".manifest.json");
  if (!out) {
    throw std::runtime_error("cannot write manifest for " + output_path);
  }
  out << manifest.dump(2) << "\n";
}

}  // namespace io
}  // namespace tprh
