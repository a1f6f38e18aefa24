// SPDX-License-Identifier: Apache-2.0
#include "rankweave/echo_agent.hpp"

#include "rankweave/probe_wire.hpp"

namespace rankweave {

EchoAgent::EchoAgent(const Endpoint& bind_to) {
  socket_.bind(bind_to);
  socket_.set_recv_timeout(std::chrono::milliseconds(100));
  port_ = socket_.local_port();
}

void EchoAgent::serve(const std::atomic<bool>& stop) {
  std::uint8_t buf[64];
  while (!stop.load(std::memory_order_relaxed)) {
    auto got = socket_.recv_from(buf, sizeof(buf));
    if (!got) continue;  // timeout tick, re-check the stop flag
    if (got->first == kProbePayloadSize) {
      socket_.send_to(buf, kProbePayloadSize, got->second);
      echoed_.fetch_add(1, std::memory_order_relaxed);
    } else {
      dropped_.fetch_add(1, std::memory_order_relaxed);
    }
  }
}

void EchoAgent::start() {
  stop_flag_.store(false);
  thread_ = std::thread([this] { serve(stop_flag_); });
}

void EchoAgent::stop() {
  if (thread_.joinable()) {
    stop_flag_.store(true);
    thread_.join();
  }
}

EchoAgent::~EchoAgent() { stop(); }

}  // namespace rankweave
