// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <thread>

#include "rankweave/net.hpp"

namespace rankweave {

/// UDP echo responder: reflects every well-formed 4-byte probe back to its
/// sender unmodified; anything else is dropped silently. Stateless per
/// datagram, so any number of concurrent probers can share one agent.
class EchoAgent {
 public:
  /// Binds immediately (throws net_error on failure). Port 0 picks an
  /// ephemeral port, see port().
  explicit EchoAgent(const Endpoint& bind_to);

  /// Serve until `stop` becomes true. Checks the flag every 100 ms.
  void serve(const std::atomic<bool>& stop);

  /// Background-thread convenience for tests: serve() on a new thread.
  void start();
  void stop();
  ~EchoAgent();

  std::uint16_t port() const { return port_; }
  std::uint64_t echoed() const { return echoed_.load(); }
  std::uint64_t dropped() const { return dropped_.load(); }

 private:
  UdpSocket socket_;
  std::uint16_t port_ = 0;
  std::atomic<std::uint64_t> echoed_{0};
  std::atomic<std::uint64_t> dropped_{0};
  std::atomic<bool> stop_flag_{false};
  std::thread thread_;
};

}  // namespace rankweave
