#ifndef MINDWHEEL_DRIVE_HPP
#define MINDWHEEL_DRIVE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mindwheel/errors.hpp"

namespace mindwheel::drive {

enum class MotorState : std::uint8_t { off = 0, clockwise = 1, anticlockwise = 2 };
enum class Action { back, front, left, right, stop };

const char* action_name(Action a);

// Motor1 drives the left wheel, motor2 the right wheel; clockwise rotation
// propels that wheel forward.
struct MotorCommand {
    MotorState motor1 = MotorState::off;
    MotorState motor2 = MotorState::off;
    Action action = Action::stop;
    friend bool operator==(const MotorCommand&, const MotorCommand&) = default;
};

// Command table:
//   0 -> (anticlockwise, anticlockwise, back)
//   1 -> (clockwise,     clockwise,     front)
//   2 -> (off,           clockwise,     left)
//   3 -> (clockwise,     off,           right)
// plus the stop row (off, off, stop) used when the attention gate holds.
MotorCommand class_to_motor(int class_id);  // throws LabelError outside 0..3
MotorCommand stop_command();

// The action for a motor-state pair, when the pair is one of the five
// documented rows.
std::optional<Action> action_for(MotorState m1, MotorState m2);

// Motion gate on the headset's 0..100 attention measure: at or above the
// threshold the class command passes; below it the chair stops.
MotorCommand gate_by_attention(int class_id, int attention_level, int threshold);

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians, normalized to (-pi, pi]
};

struct ChassisConfig {
    double wheel_speed = 0.3;  // m/s at rated rotation
    double track_width = 0.3;  // m between wheels
};

// Exact unicycle integration of the differential drive over dt seconds.
// Wheel velocities: clockwise -> +wheel_speed, anticlockwise -> -wheel_speed,
// off -> 0; v = (vl+vr)/2, omega = (vr-vl)/track_width.
Pose step_kinematics(const Pose& pose, const MotorCommand& cmd, double dt,
                     const ChassisConfig& chassis);

// ---------------------------------------------------------------------------
// Controller wire format (replaces the prototype's radio link), bit-exact:
//   byte 0: 0xD5
//   byte 1-2: sequence, big-endian
//   byte 3: motor1 code, byte 4: motor2 code (0=off, 1=cw, 2=acw)
//   byte 5: one's complement of bytes 1..4 summed mod 256
// ---------------------------------------------------------------------------

inline constexpr std::uint8_t kDriveMagic = 0xD5;
inline constexpr std::size_t kDriveFrameSize = 6;

struct DriveFrame {
    std::uint16_t sequence = 0;
    MotorState motor1 = MotorState::off;
    MotorState motor2 = MotorState::off;
    friend bool operator==(const DriveFrame&, const DriveFrame&) = default;
};

std::array<std::uint8_t, kDriveFrameSize> encode_drive_frame(MotorState m1, MotorState m2,
                                                             std::uint16_t sequence);
std::array<std::uint8_t, kDriveFrameSize> encode_drive_frame(const MotorCommand& cmd,
                                                             std::uint16_t sequence);

// Throws FrameError on wrong size, bad magic, bad checksum, or a motor code
// outside 0..2.
DriveFrame decode_drive_frame(std::span<const std::uint8_t> frame);

// ---------------------------------------------------------------------------
// Simulator: one (class, attention) event stream in, one pose trace out.
// Each command is held for hold_seconds.
// ---------------------------------------------------------------------------

struct SimEvent {
    int class_id = 0;
    int attention_level = 0;
};

struct TraceRow {
    double time = 0.0;  // seconds at the end of the hold interval
    int class_id = 0;
    int attention = 0;
    Action action = Action::stop;
    Pose pose;
};

std::vector<TraceRow> simulate(std::span<const SimEvent> events, int attention_threshold,
                               const ChassisConfig& chassis, double hold_seconds,
                               Pose start = {});

}  // namespace mindwheel::drive

#endif
