// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <netinet/in.h>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "rankweave/types.hpp"

namespace rankweave {

/// "host" or "host:port"; host may be a name or dotted IPv4.
struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  static Endpoint parse(const std::string& text, std::uint16_t default_port);
  std::string str() const;
};

sockaddr_in resolve_ipv4(const Endpoint& ep);

/// Thin RAII wrapper over an IPv4 UDP socket.
class UdpSocket {
 public:
  UdpSocket();
  ~UdpSocket();
  UdpSocket(UdpSocket&& other) noexcept;
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;

  void bind(const Endpoint& ep);
  void set_recv_timeout(std::chrono::microseconds timeout);
  std::uint16_t local_port() const;

  void send_to(const void* data, std::size_t len, const sockaddr_in& to);
  /// Blocks up to the configured timeout; nullopt on timeout.
  std::optional<std::pair<std::size_t, sockaddr_in>> recv_from(void* buf, std::size_t cap);

  void close();
  bool valid() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

}  // namespace rankweave
