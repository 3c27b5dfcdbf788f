package net.datafaker;

import java.util.Date;
import java.util.concurrent.TimeUnit;

public class DateAndTime {
    public DateAndTime() {
    }

    public Date between(Date from, Date to) {
        return from;
    }

    public Date past(int atMost, TimeUnit unit) {
        return new Date(0L);
    }

    public Date birthday() {
        return new Date(0L);
    }
}
