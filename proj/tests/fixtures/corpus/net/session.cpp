#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace net {

enum class State { kIdle, kOpen, kClosed };

class Session {
 public:
  using Callback = std::function<void(const std::string&)>;

  Session(std::string host, int port) : host_(std::move(host)), port_(port) {}

  void onMessage(Callback cb) { callbacks_.push_back(std::move(cb)); }

  void dispatch(const std::string& msg) {
    for (auto& callback : callbacks_) {
      callback(msg);
    }
  }

  std::string endpoint() const { return host_ + ":" + std::to_string(port_); }

  void setState(State next) {
    if (state_ == State::kClosed) return;
    state_ = next;
  }

 private:
  std::string host_;
  int port_;
  State state_ = State::kIdle;
  std::vector<Callback> callbacks_;
};

std::unique_ptr<Session> makeSession(const std::string& host, int port) {
  auto session = std::make_unique<Session>(host, port);
  session->setState(State::kOpen);
  return session;
}

std::map<std::string, std::string> parseHeaders(
    const std::vector<std::string>& lines) {
  std::map<std::string, std::string> headers;
  for (const auto& line : lines) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    auto key = line.substr(0, colon);
    auto val = line.substr(colon + 1);
    while (!val.empty() && val.front() == ' ') val.erase(0, 1);
    headers[key] = val;
  }
  return headers;
}

int countMatching(const std::vector<int>& values, int threshold) {
  int matches = 0;
  auto above = [threshold](int v) { return v > threshold; };
  for (int v : values) {
    if (above(v)) ++matches;
  }
  return matches;
}

std::pair<int, int> minMax(const std::vector<int>& xs) {
  auto [lo, hi] = std::make_pair(xs.front(), xs.front());
  for (int x : xs) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  return {lo, hi};
}

int switchCode(State s) {
  switch (s) {
    case State::kIdle:
      return 0;
    case State::kOpen: {
      int code = 200;
      return code;
    }
    default:
      return -1;
  }
}

}  // namespace net
