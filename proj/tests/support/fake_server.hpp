// Copyright 2026 The advforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADVFORGE_TESTS_SUPPORT_FAKE_SERVER_HPP_
#define ADVFORGE_TESTS_SUPPORT_FAKE_SERVER_HPP_

#include <httplib.h>

#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace advforge::testing {

struct RecordedRequest {
  std::string path;
  std::string body;
  std::string authorization;
};

// Local HTTP server on an ephemeral port. Handlers receive the request body
// and fill in the response; every request is recorded.
class FakeServer {
 public:
  using Handler = std::function<void(const RecordedRequest&, httplib::Response&)>;

  FakeServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind fake server");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  FakeServer(const FakeServer&) = delete;
  FakeServer& operator=(const FakeServer&) = delete;

  void on_post(const std::string& path, Handler handler) {
    server_.Post(path, [this, handler](const httplib::Request& req,
                                       httplib::Response& res) {
      RecordedRequest recorded{req.path, req.body,
                               req.get_header_value("Authorization")};
      {
        std::lock_guard<std::mutex> lock(mutex_);
        requests_.push_back(recorded);
      }
      handler(recorded, res);
    });
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::vector<RecordedRequest> requests() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return requests_;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mutex_;
  std::vector<RecordedRequest> requests_;
};

}  // namespace advforge::testing

#endif  // ADVFORGE_TESTS_SUPPORT_FAKE_SERVER_HPP_
