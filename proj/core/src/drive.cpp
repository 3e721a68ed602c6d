#include "mindwheel/drive.hpp"

#include <cmath>
#include <string>

namespace mindwheel::drive {

const char* action_name(Action a) {
    switch (a) {
        case Action::back: return "back";
        case Action::front: return "front";
        case Action::left: return "left";
        case Action::right: return "right";
        case Action::stop: return "stop";
    }
    return "?";
}

MotorCommand class_to_motor(int class_id) {
    switch (class_id) {
        case 0: return {MotorState::anticlockwise, MotorState::anticlockwise, Action::back};
        case 1: return {MotorState::clockwise, MotorState::clockwise, Action::front};
        case 2: return {MotorState::off, MotorState::clockwise, Action::left};
        case 3: return {MotorState::clockwise, MotorState::off, Action::right};
        default:
            throw LabelError("class " + std::to_string(class_id) + " out of range 0..3");
    }
}

MotorCommand stop_command() { return {MotorState::off, MotorState::off, Action::stop}; }

std::optional<Action> action_for(MotorState m1, MotorState m2) {
    for (int c = 0; c < 4; ++c) {
        const MotorCommand cmd = class_to_motor(c);
        if (cmd.motor1 == m1 && cmd.motor2 == m2) return cmd.action;
    }
    if (m1 == MotorState::off && m2 == MotorState::off) return Action::stop;
    return std::nullopt;
}

MotorCommand gate_by_attention(int class_id, int attention_level, int threshold) {
    if (attention_level < 0 || attention_level > 100)
        throw RangeError("attention level " + std::to_string(attention_level) +
                         " outside 0..100");
    if (attention_level >= threshold) return class_to_motor(class_id);
    return stop_command();
}

namespace {

double wheel_velocity(MotorState m, double speed) {
    switch (m) {
        case MotorState::off: return 0.0;
        case MotorState::clockwise: return speed;
        case MotorState::anticlockwise: return -speed;
    }
    return 0.0;
}

double normalize_heading(double theta) {
    // Wrap into (-pi, pi].
    double t = std::fmod(theta + M_PI, 2.0 * M_PI);
    if (t <= 0.0) t += 2.0 * M_PI;
    return t - M_PI;
}

}  // namespace

Pose step_kinematics(const Pose& pose, const MotorCommand& cmd, double dt,
                     const ChassisConfig& chassis) {
    if (dt <= 0.0) throw RangeError("kinematics step needs dt > 0");
    const double vl = wheel_velocity(cmd.motor1, chassis.wheel_speed);
    const double vr = wheel_velocity(cmd.motor2, chassis.wheel_speed);
    const double v = 0.5 * (vl + vr);
    const double omega = (vr - vl) / chassis.track_width;

    Pose next = pose;
    if (omega == 0.0) {
        next.x += v * dt * std::cos(pose.heading);
        next.y += v * dt * std::sin(pose.heading);
    } else {
        const double theta2 = pose.heading + omega * dt;
        const double radius = v / omega;
        next.x += radius * (std::sin(theta2) - std::sin(pose.heading));
        next.y -= radius * (std::cos(theta2) - std::cos(pose.heading));
        next.heading = theta2;
    }
    next.heading = normalize_heading(next.heading);
    return next;
}

std::array<std::uint8_t, kDriveFrameSize> encode_drive_frame(MotorState m1, MotorState m2,
                                                             std::uint16_t sequence) {
    std::array<std::uint8_t, kDriveFrameSize> frame{};
    frame[0] = kDriveMagic;
    frame[1] = static_cast<std::uint8_t>(sequence >> 8);
    frame[2] = static_cast<std::uint8_t>(sequence & 0xFF);
    frame[3] = static_cast<std::uint8_t>(m1);
    frame[4] = static_cast<std::uint8_t>(m2);
    const unsigned sum = frame[1] + frame[2] + frame[3] + frame[4];
    frame[5] = static_cast<std::uint8_t>(~sum & 0xFFu);
    return frame;
}

std::array<std::uint8_t, kDriveFrameSize> encode_drive_frame(const MotorCommand& cmd,
                                                             std::uint16_t sequence) {
    return encode_drive_frame(cmd.motor1, cmd.motor2, sequence);
}

DriveFrame decode_drive_frame(std::span<const std::uint8_t> frame) {
    if (frame.size() != kDriveFrameSize)
        throw FrameError("drive frame must be " + std::to_string(kDriveFrameSize) + " bytes");
    if (frame[0] != kDriveMagic) throw FrameError("bad drive frame magic");
    const unsigned sum = frame[1] + frame[2] + frame[3] + frame[4];
    if (frame[5] != static_cast<std::uint8_t>(~sum & 0xFFu))
        throw FrameError("drive frame checksum mismatch");
    if (frame[3] > 2 || frame[4] > 2) throw FrameError("bad motor code");

    DriveFrame out;
    out.sequence = static_cast<std::uint16_t>((frame[1] << 8) | frame[2]);
    out.motor1 = static_cast<MotorState>(frame[3]);
    out.motor2 = static_cast<MotorState>(frame[4]);
    return out;
}

std::vector<TraceRow> simulate(std::span<const SimEvent> events, int attention_threshold,
                               const ChassisConfig& chassis, double hold_seconds,
                               Pose start) {
    if (hold_seconds <= 0.0) throw RangeError("hold duration must be positive");
    std::vector<TraceRow> trace;
    trace.reserve(events.size());
    Pose pose = start;
    double t = 0.0;
    for (const SimEvent& ev : events) {
        const MotorCommand cmd = gate_by_attention(ev.class_id, ev.attention_level,
                                                   attention_threshold);
        pose = step_kinematics(pose, cmd, hold_seconds, chassis);
        t += hold_seconds;
        trace.push_back({t, ev.class_id, ev.attention_level, cmd.action, pose});
    }
    return trace;
}

}  // namespace mindwheel::drive
