// Copyright 2026 The misl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "misl/acquisition.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>

#include "misl/csv.h"
#include "misl/error.h"
#include "misl/html.h"
#include "misl/text.h"

namespace misl {

namespace fs = std::filesystem;

// --- Index pages ----------------------------------------------------------------

IndexSelectors IndexSelectors::FromConfig(const KeyValueConfig &config) {
  IndexSelectors s;
  s.row = config.GetOr("row_selector", s.row);
  s.link = config.GetOr("link_selector", s.link);
  s.title = config.GetOr("title_selector", s.title);
  s.date = config.GetOr("date_selector", s.date);
  s.description = config.GetOr("description_selector", s.description);
  return s;
}

IndexParseResult ParseIndexPage(std::string_view page, const IndexSelectors &selectors,
                                std::string_view base_url) {
  html::Selector row_sel(selectors.row), link_sel(selectors.link), title_sel(selectors.title),
      date_sel(selectors.date), desc_sel(selectors.description);
  html::Selector anchor_sel("a");
  auto doc = html::Parse(page);
  IndexParseResult result;
  for (const html::Node *row : row_sel.SelectAll(*doc)) {
    const html::Node *link_node = link_sel.SelectFirst(*row);
    if (!link_node) continue;
    if (link_node->tag != "a") link_node = anchor_sel.SelectFirst(*link_node);
    if (!link_node) continue;
    std::string href(text::Trim(link_node->Attr("href").value_or("")));
    if (href.empty()) continue;
    IndexRecord rec;
    rec.link = base_url.empty() ? href : ResolveUrl(base_url, href);
    auto field = [&](const html::Selector &sel) {
      const html::Node *n = sel.SelectFirst(*row);
      return n ? n->InnerText() : std::string();
    };
    rec.title = field(title_sel);
    rec.date = field(date_sel);
    rec.description = field(desc_sel);
    result.records.push_back(std::move(rec));
  }
  result.empty_index = result.records.empty();
  return result;
}

std::string WriteIndexCsv(const std::vector<IndexRecord> &records) {
  std::string out;
  csv::AppendRow(csv::Row(std::begin(kIndexColumns), std::end(kIndexColumns)), &out);
  for (const auto &r : records) csv::AppendRow({r.link, r.title, r.date, r.description}, &out);
  return out;
}

std::vector<IndexRecord> ReadIndexCsv(std::string_view data) {
  csv::Table table =
      csv::Read(data, csv::Row(std::begin(kIndexColumns), std::end(kIndexColumns)));
  std::vector<IndexRecord> out;
  out.reserve(table.rows.size());
  for (auto &row : table.rows) {
    out.push_back(IndexRecord{std::move(row[0]), std::move(row[1]), std::move(row[2]),
                              std::move(row[3])});
  }
  return out;
}

// --- URLs -----------------------------------------------------------------------

namespace {

int DefaultPort(const std::string &scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return 0;
}

// Removes "." and ".." segments, keeping any query untouched.
std::string NormalizePath(std::string_view path) {
  std::string_view query;
  if (size_t q = path.find_first_of("?#"); q != std::string_view::npos) {
    query = path.substr(q);
    path = path.substr(0, q);
  }
  std::vector<std::string> out;
  auto segments = text::Split(path, '/');
  for (size_t i = 0; i < segments.size(); ++i) {
    const auto &seg = segments[i];
    bool last = i + 1 == segments.size();
    if (seg == ".") {
      if (last) out.emplace_back();
    } else if (seg == "..") {
      if (out.size() > 1) out.pop_back();
      if (last) out.emplace_back();
    } else if (!seg.empty() || i == 0 || last) {
      out.push_back(seg);
    }
  }
  std::string joined = text::Join(out, "/");
  if (joined.empty() || joined.front() != '/') joined.insert(joined.begin(), '/');
  return joined + std::string(query);
}

}  // namespace

Url ParseUrl(std::string_view raw) {
  std::string_view s = text::Trim(raw);
  auto bad = [&](std::string_view why) {
    return Error(ErrorCode::kInvalidUrl, fmt::format("'{}': {}", raw, why));
  };
  size_t colon = s.find("://");
  if (colon == std::string_view::npos || colon == 0) throw bad("missing scheme");
  Url url;
  url.scheme = text::Lower(s.substr(0, colon));
  if (url.scheme != "http" && url.scheme != "https" && url.scheme != "file") {
    throw bad("unsupported scheme");
  }
  std::string_view rest = s.substr(colon + 3);
  size_t slash = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, slash);
  std::string_view path = slash == std::string_view::npos ? "/" : rest.substr(slash);
  if (url.scheme == "file") {
    if (!authority.empty() && authority != "localhost") throw bad("file URLs must be local");
    if (path.empty() || path.front() != '/') throw bad("file URL needs an absolute path");
    url.path = std::string(path);
    return url;
  }
  if (authority.empty()) throw bad("missing host");
  if (authority.find('@') != std::string_view::npos) throw bad("credentials are not supported");
  size_t port_sep = authority.rfind(':');
  if (port_sep != std::string_view::npos) {
    std::string_view port = authority.substr(port_sep + 1);
    auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), url.port);
    if (ec != std::errc() || p != port.data() + port.size() || url.port < 1 ||
        url.port > 65535) {
      throw bad("bad port");
    }
    authority = authority.substr(0, port_sep);
  }
  for (char c : authority) {
    if (!text::IsAsciiAlnum(c) && c != '-' && c != '.') throw bad("bad host");
  }
  if (authority.empty()) throw bad("missing host");
  url.host = text::Lower(authority);
  if (url.port == DefaultPort(url.scheme)) url.port = 0;
  if (path.front() != '/') url.path = "/" + std::string(path);
  else url.path = std::string(path);
  if (size_t hash = url.path.find('#'); hash != std::string::npos) url.path.resize(hash);
  return url;
}

std::string Url::Origin() const {
  if (scheme == "file") return "file://";
  std::string out = scheme + "://" + host;
  if (port != 0) out += ":" + std::to_string(port);
  return out;
}

std::string Url::ToString() const { return Origin() + path; }

std::string ResolveUrl(std::string_view base, std::string_view href) {
  href = text::Trim(href);
  if (href.find("://") != std::string_view::npos) return std::string(href);
  Url b = ParseUrl(base);
  if (href.substr(0, 2) == "//") return b.scheme + ":" + std::string(href);
  if (href.empty()) return b.ToString();
  if (href.front() == '/') return b.Origin() + NormalizePath(href);
  std::string dir = b.path.substr(0, b.path.find_first_of("?"));
  if (href.front() == '?') return b.Origin() + dir + std::string(href);
  dir = dir.substr(0, dir.rfind('/') + 1);
  return b.Origin() + NormalizePath(dir + std::string(href));
}

// --- Transports -----------------------------------------------------------------

TransportResponse HttpTransport::Get(const Url &url, std::chrono::milliseconds timeout) {
  TransportResponse out;
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.scheme == "https") {
    out.error = "https is not supported by this build";
    return out;
  }
#endif
  httplib::Client client(url.Origin());
  client.set_follow_location(true);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  auto res = client.Get(url.path);
  if (!res) {
    out.error = httplib::to_string(res.error());
    return out;
  }
  out.status = res->status;
  out.body = std::move(res->body);
  out.content_type = res->get_header_value("Content-Type");
  return out;
}

TransportResponse FileTransport::Get(const Url &url, std::chrono::milliseconds) {
  TransportResponse out;
  std::string path = url.path.substr(0, url.path.find('?'));
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    out.status = 404;
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.status = 403;
    return out;
  }
  out.body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  out.status = 200;
  return out;
}

TransportResponse DefaultTransport::Get(const Url &url, std::chrono::milliseconds timeout) {
  if (url.scheme == "file") return file_.Get(url, timeout);
  return http_.Get(url, timeout);
}

// --- Fetch ----------------------------------------------------------------------

FetchPolicy FetchPolicy::FromConfig(const KeyValueConfig &config) {
  FetchPolicy p;
  p.retries = static_cast<int>(config.GetInt("fetch.retries", p.retries));
  p.backoff = std::chrono::milliseconds(config.GetInt("fetch.backoff_ms", p.backoff.count()));
  p.timeout = std::chrono::milliseconds(config.GetInt("fetch.timeout_ms", p.timeout.count()));
  if (p.retries < 0 || p.backoff.count() < 0 || p.timeout.count() <= 0) {
    throw Error(ErrorCode::kConfig, "fetch policy values must be non-negative");
  }
  return p;
}

void RealSleep(std::chrono::milliseconds d) {
  if (d.count() > 0) std::this_thread::sleep_for(d);
}

FetchResult Fetch(std::string_view url, const FetchPolicy &policy, Transport &transport,
                  const Sleeper &sleep) {
  Url parsed = ParseUrl(url);
  std::string last_error;
  auto backoff = policy.backoff;
  for (int attempt = 0; attempt <= policy.retries; ++attempt) {
    if (attempt > 0) {
      sleep(backoff);
      backoff *= 2;
    }
    TransportResponse res = transport.Get(parsed, policy.timeout);
    if (res.error) {
      last_error = *res.error;
    } else if (res.status >= 400 && res.status < 500) {
      return DeadLink{res.status};
    } else if (res.status >= 200 && res.status < 300) {
      if (!res.body.empty()) return FetchOk{std::move(res.body), std::move(res.content_type)};
      last_error = "empty body";
    } else {
      last_error = fmt::format("http {}", res.status);
    }
  }
  return TransportFailure{fmt::format("{} after {} attempts", last_error, policy.retries + 1)};
}

void PolitenessGate::Wait(const std::string &host) {
  if (delay_.count() <= 0) return;
  Clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    Clock::time_point now = Clock::now();
    auto it = next_slot_.find(host);
    slot = (it == next_slot_.end() || it->second < now) ? now : it->second;
    next_slot_[host] = slot + delay_;
  }
  auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(slot - Clock::now());
  if (wait.count() > 0) sleep_(wait);
}

// --- Conversion -----------------------------------------------------------------

namespace {

bool IsNonLatinLetter(char32_t c) {
  if (c < 0x80) return false;
  if (c < 0xC0) return false;                    // Latin-1 symbols
  if (c == 0xD7 || c == 0xF7) return false;      // multiplication and division signs
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // punctuation, symbols, arrows
  if (c >= 0x3000 && c <= 0x303F) return false;  // CJK punctuation
  if (c >= 0x0660 && c <= 0x0669) return false;  // Arabic-Indic digits
  if (c >= 0x06F0 && c <= 0x06F9) return false;  // Extended Arabic-Indic digits
  if (c >= 0x060C && c <= 0x061F) return false;  // Arabic punctuation
  if (c == 0x06D4) return false;                 // Urdu full stop
  if (c >= 0xFE00 && c <= 0xFE0F) return false;  // variation selectors
  if (c == 0xFEFF || c == 0xFFFD) return false;
  return true;
}

std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string Substitute(std::string_view templ, const std::string &in, const std::string &out) {
  std::string result;
  for (size_t i = 0; i < templ.size();) {
    if (templ.substr(i, 4) == "{in}") {
      result += ShellQuote(in);
      i += 4;
    } else if (templ.substr(i, 5) == "{out}") {
      result += ShellQuote(out);
      i += 5;
    } else {
      result.push_back(templ[i++]);
    }
  }
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::string pattern = (fs::temp_directory_path() / "misl-convert-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw Error(ErrorCode::kIo, "cannot create a temp directory");
    path = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string ReadAll(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

double NonLatinShare(std::string_view utf8) {
  int64_t letters = 0, non_latin = 0;
  for (char32_t c : text::DecodeUtf8(utf8)) {
    if (c < 0x80) {
      if (text::IsAsciiAlpha(static_cast<char>(c))) ++letters;
    } else if (IsNonLatinLetter(c)) {
      ++letters;
      ++non_latin;
    }
  }
  return letters == 0 ? 0.0 : static_cast<double>(non_latin) / static_cast<double>(letters);
}

ConversionResult Convert(const fs::path &input, const ConvertOptions &options) {
  if (options.command.find("{in}") == std::string::npos ||
      options.command.find("{out}") == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "converter command needs {in} and {out} placeholders");
  }
  std::error_code ec;
  if (!fs::is_regular_file(input, ec)) {
    throw Error(ErrorCode::kIo, fmt::format("converter input '{}' not found", input.string()));
  }
  TempDir tmp;
  fs::path out_path = tmp.path / "out.txt";
  fs::path err_path = tmp.path / "stderr.txt";
  std::string command = Substitute(options.command, fs::absolute(input).string(),
                                   out_path.string());

  pid_t pid = fork();
  if (pid < 0) return ConverterFailed{"fork failed"};
  if (pid == 0) {
    setpgid(0, 0);
    int devnull = open("/dev/null", O_RDONLY);
    int err = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    if (err >= 0) {
      dup2(err, STDOUT_FILENO);
      dup2(err, STDERR_FILENO);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  auto deadline = std::chrono::steady_clock::now() + options.timeout;
  int status = 0;
  while (true) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0) return ConverterFailed{"waitpid failed"};
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      return ConverterFailed{"timeout"};
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string raw = ReadAll(err_path);
    std::string diag(text::Trim(raw));
    if (diag.size() > 400) diag.resize(400);
    std::string how = WIFEXITED(status) ? fmt::format("exit {}", WEXITSTATUS(status))
                                        : fmt::format("signal {}", WTERMSIG(status));
    return ConverterFailed{diag.empty() ? how : how + ": " + text::SanitizeUtf8(diag)};
  }
  std::string text = text::SanitizeUtf8(ReadAll(out_path));
  if (text::Trim(text).empty()) return CorruptSource{};
  double share = NonLatinShare(text);
  if (share > options.non_latin_threshold) return NonLatinScript{share};
  return ConvertOk{std::move(text)};
}

}  // namespace misl
